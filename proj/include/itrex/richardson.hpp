#pragma once

#include <vector>

namespace itrex {

enum class SchemeVariant { general, even };

// Nodes s_i = s0 / r_i and weights b_i combining f(s_i) into an estimate of
// f(0), cancelling the leading error-series terms.
struct ExtrapolationScheme {
    int m = 0;
    double s0 = 1.0;              // reciprocal is a positive integer
    SchemeVariant variant = SchemeVariant::even;
    std::vector<long long> nodes;  // r_1 > r_2 > ... > r_m
    std::vector<double> weights;
    double b_norm1 = 0.0;

    double step(int i) const { return s0 / double(nodes[i]); }
};

ExtrapolationScheme build_scheme(int m, double s0, SchemeVariant variant);

// samples[i] = (s_i, f(s_i)) must sit exactly on the scheme's nodes (any order).
double extrapolate(const ExtrapolationScheme& scheme,
                   const std::vector<std::pair<double, double>>& samples);

// ||b||_1 per m, for the growth-profile diagnostics.
std::vector<double> b_norm_profile(const std::vector<int>& m_list, SchemeVariant variant);

// Cross-check path: solve the (dual) Vandermonde moment system for the weights
// with the Bjorck-Pereyra recurrences in extended precision.
std::vector<double> vandermonde_weights(const ExtrapolationScheme& scheme);

}  // namespace itrex
