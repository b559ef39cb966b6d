#pragma once

#include "fraccal/order.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fraccal {

enum class SchemeKind {
    GL,             // Grunwald-Letnikov, read at x - alpha h / 2
    GL_TRUNC,       // GL with tail weights replaced by their two-term expansion
    L1,
    L1_MOD,         // L1 with zeta(alpha-1) head correction
    L1_TRUNC,
    L1_MOD_TRUNC,
    SHIFT_2MA,      // shifted, order 2 - alpha (two corrected head weights)
    SHIFT_2,        // shifted, order 2 (three corrected head weights)
    GL_LAST2,       // GL with the last two weights corrected
    GL_LAST2_TRUNC,
};

inline constexpr SchemeKind kAllSchemes[] = {
    SchemeKind::GL,       SchemeKind::GL_TRUNC,     SchemeKind::L1,        SchemeKind::L1_MOD,
    SchemeKind::L1_TRUNC, SchemeKind::L1_MOD_TRUNC, SchemeKind::SHIFT_2MA, SchemeKind::SHIFT_2,
    SchemeKind::GL_LAST2, SchemeKind::GL_LAST2_TRUNC};

std::string_view scheme_name(SchemeKind kind);
std::optional<SchemeKind> parse_scheme_kind(std::string_view name);
bool is_shifted(SchemeKind kind);
bool requires_zero_ic(SchemeKind kind);
double claimed_order(SchemeKind kind, FractionalOrder alpha);
// smallest step index n the scheme can be built for
std::size_t min_step(SchemeKind kind);

// Second term of the L1 tail expansion. Derived carries 1/12, Printed the
// alpha/12 variant that appears in the published truncated-L1 weights.
enum class L1TailCoefficient { Derived, Printed };

struct TailPolicy {
    double divisor = 5.0;
    L1TailCoefficient l1_tail = L1TailCoefficient::Derived;

    // ceil(N / p), clamped to [1, N]
    std::size_t threshold(std::size_t N) const;
};

struct WeightVector {
    SchemeKind kind;
    double alpha;
    std::size_t n;
    std::vector<double> coeffs; // lambda_0 .. lambda_n
    double shift;               // evaluation point is (n - shift) h
    double order;
    bool requires_zero_ic;
};

// w_k of (1 - z)^beta for any real beta; w_0 = 1, w_k = w_{k-1} (k-1-beta)/k.
std::vector<double> binomial_weights(double beta, std::size_t n);
std::vector<double> gl_weights(FractionalOrder alpha, std::size_t n);

enum class TailFamily { GL2, GLM, L1TAIL };

double tail_expansion(TailFamily family, FractionalOrder alpha, std::size_t k, int M = 1,
                      L1TailCoefficient l1_tail = L1TailCoefficient::Derived);

// Interior L1 weight (k-1)^{1-a} - 2k^{1-a} + (k+1)^{1-a}, over Gamma(2-a).
double l1_interior_weight(FractionalOrder alpha, std::size_t k);
// Last L1 weight ((n-1)^{1-a} - n^{1-a}) / Gamma(2-a).
double l1_last_weight(FractionalOrder alpha, std::size_t n);

std::vector<double> l1_weights(FractionalOrder alpha, std::size_t n);
std::vector<double> l1_mod_weights(FractionalOrder alpha, std::size_t n);

enum class ShiftedHead { W_TILDE, W_HAT };
std::vector<double> shifted_head_weights(ShiftedHead kind, FractionalOrder alpha);

struct LastTwo {
    double penultimate; // gamma_{n-1}
    double last;        // gamma_n
};
LastTwo gamma_last_two(FractionalOrder alpha, std::size_t n);
LastTwo gamma_last_two_asym(FractionalOrder alpha, std::size_t n);

struct PartialSums {
    double w0_direct; // sum_{k<N} w_k
    double w0_closed; // (-1)^{N-1} (alpha-1 choose N-1)
    double w1;        // N W0 - sum k w_k - (N - alpha/2)^{1-alpha} / Gamma(2-alpha)
};
PartialSums gl_partial_sums(FractionalOrder alpha, std::size_t N);

WeightVector build_scheme(SchemeKind kind, FractionalOrder alpha, std::size_t n, std::size_t N,
                          const TailPolicy& policy = {});

// CSV with header `k,coeff`, 17 significant digits.
void write_weights_csv(std::ostream& os, const WeightVector& w);

} // namespace fraccal
