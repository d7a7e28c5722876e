#include "embedkit/matrix.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace embedkit {

Mat::Mat(Modulus m, std::size_t rows, std::size_t cols)
    : mod_(m), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Mat::Mat(Modulus m, std::size_t rows, std::size_t cols, std::vector<std::uint64_t> data)
    : mod_(m), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("Mat: data size mismatch");
    for (auto& v : data_) v %= mod_.q;
}

Mat Mat::identity(const Modulus& m, std::size_t n) {
    Mat r(m, n, n);
    for (std::size_t i = 0; i < n; ++i) r.at(i, i) = 1 % m.q;
    return r;
}

Mat Mat::from_rows(const Modulus& m, const std::vector<std::vector<std::uint64_t>>& rows) {
    std::size_t nc = rows.empty() ? 0 : rows[0].size();
    Mat r(m, rows.size(), nc);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != nc) throw std::invalid_argument("Mat::from_rows: ragged rows");
        for (std::size_t j = 0; j < nc; ++j) r.at(i, j) = rows[i][j] % m.q;
    }
    return r;
}

std::vector<std::uint64_t> Mat::row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

Mat Mat::operator+(const Mat& o) const {
    if (mod_ != o.mod_ || rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("Mat::operator+: shape or modulus mismatch");
    Mat r(mod_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = add_mod(data_[i], o.data_[i], mod_);
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    if (mod_ != o.mod_ || rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("Mat::operator-: shape or modulus mismatch");
    Mat r(mod_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = sub_mod(data_[i], o.data_[i], mod_);
    return r;
}

Mat Mat::scaled(std::uint64_t s) const {
    Mat r(mod_, rows_, cols_);
    s %= mod_.q;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = mul_mod(data_[i], s, mod_);
    return r;
}

Mat Mat::transpose() const {
    Mat r(mod_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool Mat::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](std::uint64_t v) { return v == 0; });
}

Mat multiply_serial(const Mat& a, const Mat& b) {
    if (a.mod() != b.mod()) throw std::invalid_argument("multiply: modulus mismatch");
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
    const Modulus& m = a.mod();
    Mat r(m, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            std::uint64_t aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                r.at(i, j) = add_mod(r.at(i, j), mul_mod(aik, b.at(k, j), m), m);
        }
    return r;
}

Mat multiply(const Mat& a, const Mat& b) {
    if (a.mod() != b.mod()) throw std::invalid_argument("multiply: modulus mismatch");
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
    const Modulus& m = a.mod();
    Mat r(m, a.rows(), b.cols());
#pragma omp parallel for schedule(static) if (a.rows() * b.cols() >= 4096)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(a.rows()); ++ii) {
        auto i = static_cast<std::size_t>(ii);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            std::uint64_t aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                r.at(i, j) = add_mod(r.at(i, j), mul_mod(aik, b.at(k, j), m), m);
        }
    }
    return r;
}

Mat mat_pow(const Mat& a, std::uint64_t e) {
    if (a.rows() != a.cols()) throw std::invalid_argument("mat_pow: square matrix required");
    Mat result = Mat::identity(a.mod(), a.rows());
    Mat base = a;
    while (e) {
        if (e & 1) result = multiply(result, base);
        base = multiply(base, base);
        e >>= 1;
    }
    return result;
}

Mat eval_poly_at(const Poly& f, const Mat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("eval_poly_at: square matrix required");
    if (f.mod() != a.mod()) throw std::invalid_argument("eval_poly_at: modulus mismatch");
    const Modulus& m = a.mod();
    Mat acc(m, a.rows(), a.rows());
    for (int i = f.degree(); i >= 0; --i) {
        acc = multiply(acc, a);
        std::uint64_t c = f.coeff(static_cast<std::size_t>(i));
        if (c != 0)
            for (std::size_t d = 0; d < a.rows(); ++d) acc.at(d, d) = add_mod(acc.at(d, d), c, m);
    }
    return acc;
}

std::vector<std::uint64_t> apply_row(const std::vector<std::uint64_t>& v, const Mat& a) {
    if (v.size() != a.rows()) throw std::invalid_argument("apply_row: shape mismatch");
    const Modulus& m = a.mod();
    std::vector<std::uint64_t> r(a.cols(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < a.cols(); ++j)
            r[j] = add_mod(r[j], mul_mod(v[i], a.at(i, j), m), m);
    }
    return r;
}

namespace {

using Row = std::vector<std::uint64_t>;

bool row_is_zero(const Row& r) {
    return std::all_of(r.begin(), r.end(), [](std::uint64_t v) { return v == 0; });
}

void row_submul(Row& x, const Row& y, std::uint64_t k, const Modulus& m) {
    for (std::size_t j = 0; j < x.size(); ++j)
        x[j] = sub_mod(x[j], mul_mod(k, y[j], m), m);
}

std::uint64_t l_power(const Modulus& m, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r *= m.l;
    return r;
}

}  // namespace

Mat howell_form(const Mat& a) {
    const Modulus& m = a.mod();
    const std::size_t n = a.cols();
    std::vector<Row> pool;
    pool.reserve(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Row r = a.row(i);
        if (!row_is_zero(r)) pool.push_back(std::move(r));
    }
    std::vector<Row> res;
    std::vector<std::size_t> pivot_cols;
    std::vector<unsigned> pivot_vals;
    for (std::size_t col = 0; col < n; ++col) {
        // pick the pool row with minimal l-adic valuation at this column
        std::size_t best = pool.size();
        unsigned best_v = m.c;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (pool[i][col] == 0) continue;
            unsigned v = valuation(pool[i][col], m);
            if (v < best_v) {
                best_v = v;
                best = i;
            }
        }
        if (best == pool.size()) continue;
        Row piv = std::move(pool[best]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
        // normalize pivot entry to l^v
        std::uint64_t unit = piv[col] / l_power(m, best_v);
        std::uint64_t ui = inv_unit(unit, m);
        for (auto& x : piv) x = mul_mod(x, ui, m);
        // eliminate the column from the remaining pool
        std::uint64_t pv = l_power(m, best_v);
        for (auto& r : pool) {
            if (r[col] == 0) continue;
            row_submul(r, piv, r[col] / pv, m);
        }
        // annihilator row keeps the span's Howell property over Z/l^c
        if (best_v > 0) {
            Row ann = piv;
            std::uint64_t k = l_power(m, m.c - best_v);
            for (auto& x : ann) x = mul_mod(x, k, m);
            if (!row_is_zero(ann)) pool.push_back(std::move(ann));
        }
        pool.erase(std::remove_if(pool.begin(), pool.end(), row_is_zero), pool.end());
        res.push_back(std::move(piv));
        pivot_cols.push_back(col);
        pivot_vals.push_back(best_v);
    }
    // reduce entries above each pivot into [0, l^v)
    for (std::size_t j = 0; j < res.size(); ++j) {
        std::uint64_t pv = l_power(m, pivot_vals[j]);
        for (std::size_t i = 0; i < j; ++i) {
            std::uint64_t e = res[i][pivot_cols[j]];
            if (e >= pv) row_submul(res[i], res[j], e / pv, m);
        }
    }
    Mat out(m, res.size(), n);
    for (std::size_t i = 0; i < res.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = res[i][j];
    return out;
}

HowellProfile howell_profile(const Mat& h) {
    HowellProfile p;
    const Modulus& m = h.mod();
    for (std::size_t i = 0; i < h.rows(); ++i) {
        std::size_t col = 0;
        while (col < h.cols() && h.at(i, col) == 0) ++col;
        if (col == h.cols()) continue;
        p.pivot_cols.push_back(col);
        p.pivot_vals.push_back(valuation(h.at(i, col), m));
    }
    return p;
}

unsigned span_log_size(const Mat& h) {
    auto p = howell_profile(h);
    unsigned s = 0;
    for (unsigned v : p.pivot_vals) s += h.mod().c - v;
    return s;
}

bool span_contains(const Mat& h, const std::vector<std::uint64_t>& v) {
    const Modulus& m = h.mod();
    Row x(v);
    for (auto& e : x) e %= m.q;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        std::size_t col = 0;
        while (col < h.cols() && h.at(i, col) == 0) ++col;
        if (col == h.cols()) continue;
        if (x[col] == 0) continue;
        unsigned pv = valuation(h.at(i, col), m);
        if (valuation(x[col], m) < pv) return false;
        Row hr = h.row(i);
        row_submul(x, hr, x[col] / l_power(m, pv), m);
    }
    return row_is_zero(x);
}

std::optional<std::vector<std::uint64_t>> span_coordinates(const Mat& h,
                                                           const std::vector<std::uint64_t>& v) {
    const Modulus& m = h.mod();
    Row x(v);
    for (auto& e : x) e %= m.q;
    std::vector<std::uint64_t> coords(h.rows(), 0);
    for (std::size_t i = 0; i < h.rows(); ++i) {
        std::size_t col = 0;
        while (col < h.cols() && h.at(i, col) == 0) ++col;
        if (col == h.cols()) continue;
        std::uint64_t piv = h.at(i, col);
        if (x[col] == 0) continue;
        if (valuation(piv, m) != 0) {
            if (valuation(x[col], m) < valuation(piv, m)) return std::nullopt;
            coords[i] = x[col] / l_power(m, valuation(piv, m));
        } else {
            coords[i] = mul_mod(x[col], inv_unit(piv, m), m);
        }
        Row hr = h.row(i);
        row_submul(x, hr, coords[i], m);
    }
    if (!row_is_zero(x)) return std::nullopt;
    return coords;
}

Mat kernel(const Mat& a) {
    const Modulus& m = a.mod();
    const std::size_t n = a.rows();
    const std::size_t k = a.cols();
    // rows [A_i | e_i]; Howell over the combined columns; rows with zero
    // left half carry kernel vectors in the right half
    Mat aug(m, n, k + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, k + i) = 1 % m.q;
    }
    Mat h = howell_form(aug);
    std::vector<Row> ker_rows;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        bool left_zero = true;
        for (std::size_t j = 0; j < k; ++j)
            if (h.at(i, j) != 0) {
                left_zero = false;
                break;
            }
        if (!left_zero) continue;
        Row r(n);
        for (std::size_t j = 0; j < n; ++j) r[j] = h.at(i, k + j);
        ker_rows.push_back(std::move(r));
    }
    if (ker_rows.empty()) return Mat(m, 0, n);
    return howell_form(Mat::from_rows(m, ker_rows));
}

Mat span_intersection(const Mat& a, const Mat& b) {
    if (a.mod() != b.mod() || a.cols() != b.cols())
        throw std::invalid_argument("span_intersection: shape or modulus mismatch");
    const Modulus& m = a.mod();
    const std::size_t n = a.cols();
    // rows [A_i | A_i] and [B_j | 0]; left-zero Howell rows carry the
    // intersection in the right half
    std::vector<Row> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Row r(2 * n, 0);
        for (std::size_t j = 0; j < n; ++j) r[j] = r[n + j] = a.at(i, j);
        rows.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < b.rows(); ++i) {
        Row r(2 * n, 0);
        for (std::size_t j = 0; j < n; ++j) r[j] = b.at(i, j);
        rows.push_back(std::move(r));
    }
    if (rows.empty()) return Mat(m, 0, n);
    Mat h = howell_form(Mat::from_rows(m, rows));
    std::vector<Row> out;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        bool left_zero = true;
        for (std::size_t j = 0; j < n; ++j)
            if (h.at(i, j) != 0) {
                left_zero = false;
                break;
            }
        if (!left_zero) continue;
        Row r(n);
        for (std::size_t j = 0; j < n; ++j) r[j] = h.at(i, n + j);
        out.push_back(std::move(r));
    }
    if (out.empty()) return Mat(m, 0, n);
    return howell_form(Mat::from_rows(m, out));
}

Mat span_sum(const Mat& a, const Mat& b) {
    if (a.mod() != b.mod() || a.cols() != b.cols())
        throw std::invalid_argument("span_sum: shape or modulus mismatch");
    std::vector<Row> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
    for (std::size_t i = 0; i < b.rows(); ++i) rows.push_back(b.row(i));
    if (rows.empty()) return Mat(a.mod(), 0, a.cols());
    return howell_form(Mat::from_rows(a.mod(), rows));
}

std::size_t rank_mod_l(const Mat& a) {
    const Modulus& m = a.mod();
    Modulus fl(m.l, 1);
    std::vector<Row> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Row r = a.row(i);
        for (auto& x : r) x %= m.l;
        rows.push_back(std::move(r));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < rows.size(); ++col) {
        std::size_t piv = rows.size();
        for (std::size_t i = rank; i < rows.size(); ++i)
            if (rows[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        std::uint64_t inv = inv_unit(rows[rank][col], fl);
        for (auto& x : rows[rank]) x = mul_mod(x, inv, fl);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            row_submul(rows[i], rows[rank], rows[i][col], fl);
        }
        ++rank;
    }
    return rank;
}

}  // namespace embedkit
