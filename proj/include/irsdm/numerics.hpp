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
#ifndef IRSDM_NUMERICS_HPP
#define IRSDM_NUMERICS_HPP

// Dense complex kernel shared by every other module: Hermitian principal eigenpair,
// SVD with a fixed phase convention, tolerance-based pseudo-inverse and the
// unit-modulus phase projection.
//
// All functions are pure; results are bit-identical for identical inputs.

#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "irsdm/types.hpp"

namespace irsdm
{

// Singular values at or below rank_tol * s_max are treated as zero.
inline constexpr double kDefaultRankTol = 1e-10;

// Default Hermitian tolerance (relative, Frobenius) for the eigen solver.
inline constexpr double kDefaultHermitianTol = 1e-9;

// Phase pivot: first entry whose magnitude is within this relative distance of the largest.
inline constexpr double kPhasePivotTol = 1e-9;

template <typename Real>
struct EigPair
{
    Real value{};
    CVector<Real> vector;
};

template <typename Real>
struct SvdResult
{
    CMatrix<Real> U; // thin, orthonormal columns
    RVector<Real> s; // descending
    CMatrix<Real> V; // thin, orthonormal columns

    Eigen::Index rank(Real rank_tol = Real(kDefaultRankTol)) const
    {
        if (s.size() == 0 || s(0) <= Real(0))
            return 0;
        Eigen::Index r = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > rank_tol * s(0))
                ++r;
        return r;
    }
};

// Index of the entry that carries the phase convention.
template <typename Derived>
Eigen::Index phase_pivot(const Eigen::MatrixBase<Derived> &v)
{
    using Real = typename Derived::RealScalar;
    if (v.size() == 0)
        return 0;
    const Real peak = v.cwiseAbs().maxCoeff();
    const Real floor = peak * (Real(1) - Real(kPhasePivotTol));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) >= floor)
            return i;
    return 0;
}

// Rotates v so its pivot entry is real non-negative. Returns the unit factor applied.
template <typename Derived>
std::complex<typename Derived::RealScalar> normalize_phase(Eigen::MatrixBase<Derived> &v)
{
    using Real = typename Derived::RealScalar;
    if (v.size() == 0)
        return {Real(1), Real(0)};
    const Eigen::Index k = phase_pivot(v);
    const auto p = v(k);
    const Real mag = std::abs(p);
    if (mag == Real(0))
        return {Real(1), Real(0)};
    const std::complex<Real> rot = std::conj(p) / mag;
    v *= rot;
    v(k) = std::complex<Real>(std::abs(v(k)), Real(0));
    return rot;
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived> &A, const char *what)
{
    if (A.rows() != A.cols() || A.rows() == 0)
        throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                             std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
}

// Largest eigenvalue and a unit eigenvector of a Hermitian matrix.
// The eigenvector's pivot entry (see phase_pivot) is real non-negative.
template <typename Derived>
EigPair<typename Derived::RealScalar>
hermitian_principal_eigpair(const Eigen::MatrixBase<Derived> &A,
                            typename Derived::RealScalar tol = kDefaultHermitianTol)
{
    using Real = typename Derived::RealScalar;
    require_square(A, "hermitian_principal_eigpair");
    const CMatrix<Real> M = A;
    const Real scale = M.norm();
    const Real skew = (M - M.adjoint()).norm();
    if (skew > tol * scale)
        throw ContractError("hermitian_principal_eigpair: matrix is not Hermitian (||A - A^H||_F = " +
                            std::to_string(skew) + ")");

    const CMatrix<Real> H = (M + M.adjoint()) * Real(0.5);
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(H);
    if (es.info() != Eigen::Success)
        throw ContractError("hermitian_principal_eigpair: eigen decomposition failed");
    const Eigen::Index last = H.rows() - 1;
    EigPair<Real> out{es.eigenvalues()(last), es.eigenvectors().col(last)};
    out.vector.normalize();
    normalize_phase(out.vector);
    return out;
}

// Principal eigenpair of the rank-one matrix x x^H, solved analytically.
template <typename Derived>
EigPair<typename Derived::RealScalar> rank_one_principal(const Eigen::MatrixBase<Derived> &x)
{
    using Real = typename Derived::RealScalar;
    const Real n = x.norm();
    if (!(n > Real(0)))
        throw DegenerateError("rank_one_principal: zero vector has no principal direction");
    EigPair<Real> out{n * n, x / n};
    normalize_phase(out.vector);
    return out;
}

// Rotates u so that u^H x is real non-negative (maximal-ratio combining phase).
// Leaves u unchanged when u^H x = 0.
template <typename DerivedU, typename DerivedX>
void co_phase(Eigen::MatrixBase<DerivedU> &u, const Eigen::MatrixBase<DerivedX> &x)
{
    using Real = typename DerivedU::RealScalar;
    const std::complex<Real> ip = u.dot(x);
    const Real mag = std::abs(ip);
    if (mag > Real(0))
        u *= ip / mag;
}

// Thin SVD A = U diag(s) V^H. Column pairs are rotated so each U column obeys the phase rule.
template <typename Derived>
SvdResult<typename Derived::RealScalar> svd(const Eigen::MatrixBase<Derived> &A)
{
    using Real = typename Derived::RealScalar;
    if (A.size() == 0)
        throw DimensionError("svd: empty matrix");
    const CMatrix<Real> M = A;
    Eigen::BDCSVD<CMatrix<Real>> dec(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdResult<Real> out{dec.matrixU(), dec.singularValues(), dec.matrixV()};
    for (Eigen::Index k = 0; k < out.U.cols(); ++k)
    {
        auto ucol = out.U.col(k);
        const auto p = ucol(phase_pivot(ucol));
        const Real mag = std::abs(p);
        if (mag == Real(0))
            continue;
        const std::complex<Real> rot = std::conj(p) / mag;
        out.U.col(k) *= rot;
        out.V.col(k) *= rot;
    }
    return out;
}

// Number of singular values above rank_tol * s_max.
template <typename Derived>
Eigen::Index numerical_rank(const Eigen::MatrixBase<Derived> &A,
                            typename Derived::RealScalar rank_tol = kDefaultRankTol)
{
    if (A.size() == 0)
        return 0;
    return svd(A).rank(rank_tol);
}

// Moore-Penrose pseudo-inverse; singular values <= rank_tol * s_max are dropped.
template <typename Derived>
CMatrix<typename Derived::RealScalar> pseudo_inverse(const Eigen::MatrixBase<Derived> &A,
                                                     typename Derived::RealScalar rank_tol = kDefaultRankTol)
{
    using Real = typename Derived::RealScalar;
    if (A.size() == 0)
        throw DimensionError("pseudo_inverse: empty matrix");
    if (!(rank_tol > Real(0)))
        throw ContractError("pseudo_inverse: rank_tol must be positive");
    CMatrix<Real> out = CMatrix<Real>::Zero(A.cols(), A.rows());
    if (A.cwiseAbs().maxCoeff() == Real(0))
        return out;
    const auto d = svd(A);
    const Eigen::Index r = d.rank(rank_tol);
    for (Eigen::Index i = 0; i < r; ++i)
        out.noalias() += (d.V.col(i) / d.s(i)) * d.U.col(i).adjoint();
    return out;
}

// Orthogonal projector onto the complement of range(H), so (P u)^H H = 0 for every u.
// Throws DegenerateError when H spans the whole receive space.
template <typename Derived>
CMatrix<typename Derived::RealScalar> null_space_projector(const Eigen::MatrixBase<Derived> &h,
                                                           typename Derived::RealScalar rank_tol = kDefaultRankTol)
{
    using Real = typename Derived::RealScalar;
    if (h.size() == 0)
        throw DimensionError("null_space_projector: empty matrix");
    CMatrix<Real> p = CMatrix<Real>::Identity(h.rows(), h.rows());
    if (h.cwiseAbs().maxCoeff() == Real(0))
        return p;
    const auto d = svd(h);
    const Eigen::Index r = d.rank(rank_tol);
    if (r >= h.rows())
        throw DegenerateError("null_space_projector: range fills all " + std::to_string(h.rows()) +
                              " receive dimensions; zero-forcing is infeasible");
    p.noalias() -= d.U.leftCols(r) * d.U.leftCols(r).adjoint();
    return p;
}

// Entry-wise exp(j arg t_i); zero entries are copied from `fallback`.
template <typename DerivedT, typename DerivedF>
CVector<typename DerivedT::RealScalar> unit_modulus_project(const Eigen::MatrixBase<DerivedT> &t,
                                                            const Eigen::MatrixBase<DerivedF> &fallback)
{
    using Real = typename DerivedT::RealScalar;
    if (t.size() != fallback.size())
        throw DimensionError("unit_modulus_project: length mismatch (" + std::to_string(t.size()) + " vs " +
                             std::to_string(fallback.size()) + ")");
    CVector<Real> out(t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i)
        out(i) = std::abs(t(i)) > Real(0) ? std::polar(Real(1), std::arg(t(i))) : std::complex<Real>(fallback(i));
    return out;
}

template <typename Derived>
bool is_unit_modulus(const Eigen::MatrixBase<Derived> &v, typename Derived::RealScalar tol)
{
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(std::abs(v(i)) - 1) > tol)
            return false;
    return true;
}

// |<a, b>| / (||a|| ||b||) distance from 1; zero when a and b agree up to global phase.
template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar phase_invariant_distance(const Eigen::MatrixBase<DerivedA> &a,
                                                       const Eigen::MatrixBase<DerivedB> &b)
{
    using Real = typename DerivedA::RealScalar;
    const Real na = a.norm();
    const Real nb = b.norm();
    if (na == Real(0) || nb == Real(0))
        return na == nb ? Real(0) : Real(1);
    // ||a/|a| - e^{j phi} b/|b| || minimised over phi, attained at phi = arg(b^H a).
    // Evaluated by explicit alignment; sqrt(2 - 2|<a,b>|) bottoms out near sqrt(eps).
    const std::complex<Real> ip = b.dot(a);
    const std::complex<Real> rot = std::abs(ip) > Real(0) ? ip / std::abs(ip) : std::complex<Real>(1);
    return (a / na - (rot / nb) * b).norm();
}

} // namespace irsdm

#endif // IRSDM_NUMERICS_HPP
