// SPDX-License-Identifier: Apache-2.0
//
// irsdm: receive beamforming and IRS phase-shift design for directional modulation
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#ifndef IRSDM_TYPES_HPP
#define IRSDM_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace irsdm
{

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using CMatrixd = CMatrix<double>;
using CVectord = CVector<double>;
using RVectord = RVector<double>;

// Error taxonomy. ValidationError is the only one that maps to a usage error (exit 2)
// in the CLI; everything else is a runtime failure (exit 1).
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Shapes do not conform.
class DimensionError : public Error
{
public:
    using Error::Error;
};

// Input violates a documented precondition (e.g. matrix not Hermitian).
class ContractError : public Error
{
public:
    using Error::Error;
};

// Geometry or beamformers leave the requested quantity undefined.
class DegenerateError : public Error
{
public:
    using Error::Error;
};

// Argument outside the mathematical domain (e.g. non-positive distance).
class DomainError : public Error
{
public:
    using Error::Error;
};

// User-supplied configuration is malformed or out of range. `key()` names the offending entry.
class ValidationError : public Error
{
public:
    ValidationError(std::string key, const std::string &what)
        : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    const std::string &key() const noexcept { return key_; }

private:
    std::string key_;
};

} // namespace irsdm

#endif // IRSDM_TYPES_HPP
