#pragma once

#include <gmpxx.h>

#include <cassert>
#include <initializer_list>
#include <string>
#include <vector>

namespace twtree {

// Exact rational scalar. All linear algebra in this library is over Q;
// no floating point appears anywhere on a rank-deciding path.
using Rat = mpq_class;

using Vec = std::vector<Rat>;

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

// Dense exact rational matrix, row major.
class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static RatMatrix identity(int n) {
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const RatMatrix& o) const { return !(*this == o); }

    RatMatrix operator*(const RatMatrix& o) const {
        assert(cols_ == o.rows_);
        RatMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Rat& x = at(i, k);
                if (is_zero(x)) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    const Rat& y = o.at(k, j);
                    if (!is_zero(y)) r.at(i, j) += x * y;
                }
            }
        return r;
    }

    RatMatrix operator+(const RatMatrix& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        RatMatrix r(rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
        return r;
    }

    RatMatrix operator-(const RatMatrix& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        RatMatrix r(rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
        return r;
    }

    Vec apply(const Vec& v) const {
        assert(int(v.size()) == cols_);
        Vec r(rows_);
        for (int i = 0; i < rows_; ++i) {
            Rat s = 0;
            for (int j = 0; j < cols_; ++j) {
                const Rat& x = at(i, j);
                if (!is_zero(x) && !is_zero(v[j])) s += x * v[j];
            }
            r[i] = s;
        }
        return r;
    }

    RatMatrix transpose() const {
        RatMatrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Rat trace() const {
        assert(rows_ == cols_);
        Rat s = 0;
        for (int i = 0; i < rows_; ++i) s += at(i, i);
        return s;
    }

    bool is_zero_matrix() const {
        for (const Rat& x : a_)
            if (!is_zero(x)) return false;
        return true;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

    // Row-major flattening, the coordinate system used by algebra bases.
    Vec flatten() const { return a_; }

    static RatMatrix reshape(const Vec& v, int n) {
        assert(int(v.size()) == n * n);
        RatMatrix m(n, n);
        m.a_ = v;
        return m;
    }

    std::string str() const {
        std::string s;
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) {
                s += at(i, j).get_str();
                s += (j + 1 == cols_) ? "" : " ";
            }
            s += "\n";
        }
        return s;
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

inline Rat dot(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (!is_zero(a[i]) && !is_zero(b[i])) s += a[i] * b[i];
    return s;
}

}  // namespace twtree
