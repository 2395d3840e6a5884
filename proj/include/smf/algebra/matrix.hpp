#pragma once

#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "smf/algebra/polynomial.hpp"
#include "smf/algebra/scalar.hpp"

namespace smf
{
    /// Dense row-major matrix over an exact field R.
    template <class R>
    class Matrix
    {
    public:
        Matrix() = default;
        Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, R(0)) {}
        Matrix(size_t rows, size_t cols, std::vector<R> entries) : rows_(rows), cols_(cols), e_(std::move(entries))
        {
            if (e_.size() != rows * cols)
                throw PreconditionError("Matrix: entry count does not match shape");
        }
        Matrix(std::initializer_list<std::initializer_list<R>> rows)
        {
            rows_ = rows.size();
            cols_ = rows_ ? rows.begin()->size() : 0;
            for (const auto &r : rows)
            {
                if (r.size() != cols_)
                    throw PreconditionError("Matrix: ragged rows");
                e_.insert(e_.end(), r.begin(), r.end());
            }
        }

        static Matrix identity(size_t n)
        {
            Matrix m(n, n);
            for (size_t i = 0; i < n; ++i)
                m(i, i) = R(1);
            return m;
        }

        size_t rows() const noexcept { return rows_; }
        size_t cols() const noexcept { return cols_; }
        bool is_square() const noexcept { return rows_ == cols_; }

        R &operator()(size_t i, size_t j) { return e_[i * cols_ + j]; }
        const R &operator()(size_t i, size_t j) const { return e_[i * cols_ + j]; }

        std::vector<R> row(size_t i) const { return {e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_}; }

        Matrix transpose() const
        {
            Matrix t(cols_, rows_);
            for (size_t i = 0; i < rows_; ++i)
                for (size_t j = 0; j < cols_; ++j)
                    t(j, i) = (*this)(i, j);
            return t;
        }

        friend Matrix operator*(const Matrix &a, const Matrix &b)
        {
            if (a.cols_ != b.rows_)
                throw PreconditionError("Matrix product: shape mismatch");
            Matrix c(a.rows_, b.cols_);
            for (size_t i = 0; i < a.rows_; ++i)
                for (size_t k = 0; k < a.cols_; ++k)
                {
                    const R &aik = a(i, k);
                    if (aik == 0)
                        continue;
                    for (size_t j = 0; j < b.cols_; ++j)
                        c(i, j) += aik * b(k, j);
                }
            return c;
        }

        friend std::vector<R> operator*(const Matrix &a, const std::vector<R> &v)
        {
            if (a.cols_ != v.size())
                throw PreconditionError("Matrix-vector product: shape mismatch");
            std::vector<R> out(a.rows_, R(0));
            for (size_t i = 0; i < a.rows_; ++i)
                for (size_t j = 0; j < a.cols_; ++j)
                    out[i] += a(i, j) * v[j];
            return out;
        }

        friend Matrix operator+(Matrix a, const Matrix &b)
        {
            for (size_t i = 0; i < a.e_.size(); ++i)
                a.e_[i] += b.e_[i];
            return a;
        }

        friend Matrix operator-(Matrix a, const Matrix &b)
        {
            for (size_t i = 0; i < a.e_.size(); ++i)
                a.e_[i] -= b.e_[i];
            return a;
        }

        friend Matrix operator*(const R &s, Matrix a)
        {
            for (auto &v : a.e_)
                v *= s;
            return a;
        }

        friend bool operator==(const Matrix &a, const Matrix &b)
        {
            if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
                return false;
            for (size_t i = 0; i < a.e_.size(); ++i)
                if (!(a.e_[i] == b.e_[i]))
                    return false;
            return true;
        }

        friend std::ostream &operator<<(std::ostream &os, const Matrix &m)
        {
            for (size_t i = 0; i < m.rows_; ++i)
            {
                os << "[";
                for (size_t j = 0; j < m.cols_; ++j)
                    os << (j ? " " : "") << m(i, j);
                os << "]\n";
            }
            return os;
        }

        /// Reduced row echelon form in place; returns pivot columns.
        std::vector<size_t> rref_in_place()
        {
            std::vector<size_t> pivots;
            size_t r = 0;
            for (size_t c = 0; c < cols_ && r < rows_; ++c)
            {
                size_t piv = rows_;
                for (size_t i = r; i < rows_; ++i)
                    if (!((*this)(i, c) == 0))
                    {
                        piv = i;
                        break;
                    }
                if (piv == rows_)
                    continue;
                if (piv != r)
                    for (size_t j = 0; j < cols_; ++j)
                        std::swap((*this)(piv, j), (*this)(r, j));
                R inv = R(1) / (*this)(r, c);
                for (size_t j = c; j < cols_; ++j)
                    (*this)(r, j) *= inv;
                for (size_t i = 0; i < rows_; ++i)
                {
                    if (i == r || (*this)(i, c) == 0)
                        continue;
                    R f = (*this)(i, c);
                    for (size_t j = c; j < cols_; ++j)
                        (*this)(i, j) -= f * (*this)(r, j);
                }
                pivots.push_back(c);
                ++r;
            }
            return pivots;
        }

        std::pair<Matrix, std::vector<size_t>> rref() const
        {
            Matrix m = *this;
            auto piv = m.rref_in_place();
            return {std::move(m), std::move(piv)};
        }

        size_t rank() const { return rref().second.size(); }

        /// Basis of the right kernel {x : A x = 0}.
        std::vector<std::vector<R>> kernel() const
        {
            auto [m, piv] = rref();
            std::vector<bool> is_pivot(cols_, false);
            for (size_t c : piv)
                is_pivot[c] = true;
            std::vector<std::vector<R>> basis;
            for (size_t free = 0; free < cols_; ++free)
            {
                if (is_pivot[free])
                    continue;
                std::vector<R> v(cols_, R(0));
                v[free] = R(1);
                for (size_t i = 0; i < piv.size(); ++i)
                    v[piv[i]] = -m(i, free);
                basis.push_back(std::move(v));
            }
            return basis;
        }

        Matrix inverse() const
        {
            if (!is_square())
                throw PreconditionError("inverse: non-square matrix");
            Matrix aug(rows_, 2 * cols_);
            for (size_t i = 0; i < rows_; ++i)
            {
                for (size_t j = 0; j < cols_; ++j)
                    aug(i, j) = (*this)(i, j);
                aug(i, cols_ + i) = R(1);
            }
            auto piv = aug.rref_in_place();
            if (piv.size() < rows_ || piv[rows_ - 1] >= cols_)
                throw ComputationError("inverse: singular matrix");
            Matrix inv(rows_, cols_);
            for (size_t i = 0; i < rows_; ++i)
                for (size_t j = 0; j < cols_; ++j)
                    inv(i, j) = aug(i, cols_ + j);
            return inv;
        }

        R det() const
        {
            if (!is_square())
                throw PreconditionError("det: non-square matrix");
            Matrix m = *this;
            R d(1);
            for (size_t c = 0; c < cols_; ++c)
            {
                size_t piv = rows_;
                for (size_t i = c; i < rows_; ++i)
                    if (!(m(i, c) == 0))
                    {
                        piv = i;
                        break;
                    }
                if (piv == rows_)
                    return R(0);
                if (piv != c)
                {
                    for (size_t j = 0; j < cols_; ++j)
                        std::swap(m(piv, j), m(c, j));
                    d = -d;
                }
                d *= m(c, c);
                R inv = R(1) / m(c, c);
                for (size_t i = c + 1; i < rows_; ++i)
                {
                    if (m(i, c) == 0)
                        continue;
                    R f = m(i, c) * inv;
                    for (size_t j = c; j < cols_; ++j)
                        m(i, j) -= f * m(c, j);
                }
            }
            return d;
        }

        /// Monic characteristic polynomial det(xI - A), via reduction to Hessenberg form.
        Polynomial<R> charpoly() const
        {
            if (!is_square())
                throw PreconditionError("charpoly: non-square matrix");
            size_t n = rows_;
            Matrix H = *this;
            for (size_t m = 1; m + 1 < n; ++m)
            {
                size_t piv = n;
                for (size_t i = m; i < n; ++i)
                    if (!(H(i, m - 1) == 0))
                    {
                        piv = i;
                        break;
                    }
                if (piv == n)
                    continue;
                if (piv != m)
                {
                    for (size_t j = 0; j < n; ++j)
                        std::swap(H(piv, j), H(m, j));
                    for (size_t i = 0; i < n; ++i)
                        std::swap(H(i, piv), H(i, m));
                }
                R inv = R(1) / H(m, m - 1);
                for (size_t i = m + 1; i < n; ++i)
                {
                    if (H(i, m - 1) == 0)
                        continue;
                    R u = H(i, m - 1) * inv;
                    for (size_t j = 0; j < n; ++j)
                        H(i, j) -= u * H(m, j);
                    for (size_t r = 0; r < n; ++r)
                        H(r, m) += u * H(r, i);
                }
            }
            // 1-based recurrence on the Hessenberg matrix.
            auto h = [&](size_t i, size_t j) -> const R & { return H(i - 1, j - 1); };
            std::vector<Polynomial<R>> p(n + 1);
            p[0] = Polynomial<R>(R(1));
            Polynomial<R> x = Polynomial<R>::x();
            for (size_t m = 1; m <= n; ++m)
            {
                p[m] = (x - Polynomial<R>(h(m, m))) * p[m - 1];
                R t(1);
                for (size_t i = 1; i < m; ++i)
                {
                    t *= h(m - i + 1, m - i);
                    R coef = h(m - i, m) * t;
                    if (!(coef == 0))
                        p[m] -= p[m - i - 1] * coef;
                }
            }
            return p[n];
        }

    private:
        size_t rows_ = 0, cols_ = 0;
        std::vector<R> e_;
    };

    using RationalMatrix = Matrix<Rational>;

    template <class R>
    Polynomial<R> charpoly(const Matrix<R> &m)
    {
        return m.charpoly();
    }
} // namespace smf
