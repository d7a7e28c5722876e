#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "embedkit/modarith.hpp"

namespace embedkit {

/// Dense matrix over Z/l^c, row-major. Module elements are row vectors and
/// act on the right: v -> v * A.
class Mat {
public:
    Mat() = default;
    Mat(Modulus m, std::size_t rows, std::size_t cols);
    Mat(Modulus m, std::size_t rows, std::size_t cols, std::vector<std::uint64_t> data);

    static Mat identity(const Modulus& m, std::size_t n);
    static Mat from_rows(const Modulus& m, const std::vector<std::vector<std::uint64_t>>& rows);

    const Modulus& mod() const { return mod_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint64_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::uint64_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const std::vector<std::uint64_t>& data() const { return data_; }

    std::vector<std::uint64_t> row(std::size_t r) const;

    bool operator==(const Mat&) const = default;

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat scaled(std::uint64_t s) const;
    Mat transpose() const;

    bool is_zero() const;

private:
    Modulus mod_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint64_t> data_;
};

/// OpenMP-parallel matrix product (the hot kernel).
Mat multiply(const Mat& a, const Mat& b);
/// Serial reference for the parallel kernel; kept for tests and benchmarks.
Mat multiply_serial(const Mat& a, const Mat& b);

Mat mat_pow(const Mat& a, std::uint64_t e);

/// f(A) for a square matrix A, Horner evaluation.
Mat eval_poly_at(const Poly& f, const Mat& a);

/// row vector v * A
std::vector<std::uint64_t> apply_row(const std::vector<std::uint64_t>& v, const Mat& a);

/// Howell normal form of the row span of A: the unique canonical basis of the
/// subgroup of (Z/l^c)^cols generated by the rows. Zero rows are dropped, so
/// the result may have zero rows for the zero span.
Mat howell_form(const Mat& a);

/// Pivot columns and pivot valuations of a matrix already in Howell form.
struct HowellProfile {
    std::vector<std::size_t> pivot_cols;
    std::vector<unsigned> pivot_vals;  // pivot entry is l^val
};
HowellProfile howell_profile(const Mat& h);

/// log_l of the order of the row span (H in Howell form): sum of (c - val).
unsigned span_log_size(const Mat& h);

/// Membership of a row vector in the span of a Howell-form matrix.
bool span_contains(const Mat& h, const std::vector<std::uint64_t>& v);

/// Coordinates of v in the rows of H (Howell form, all pivots units).
/// Returns nullopt if v is outside the span or a non-unit pivot blocks
/// exact coordinates.
std::optional<std::vector<std::uint64_t>> span_coordinates(const Mat& h,
                                                           const std::vector<std::uint64_t>& v);

/// Canonical basis of {v : v * A = 0}.
Mat kernel(const Mat& a);

/// Canonical basis of span(A) ∩ span(B).
Mat span_intersection(const Mat& a, const Mat& b);

/// Canonical basis of span(A) + span(B).
Mat span_sum(const Mat& a, const Mat& b);

/// Rank of A reduced mod l (F_l rank); also the invertibility test mod l.
std::size_t rank_mod_l(const Mat& a);

}  // namespace embedkit
