#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace momentlab {

enum class Method { ExactAverage, MonteCarlo, Quadrature };

const char* method_name(Method m);

// A 2q-th moment average: point estimate, standard error (0 for exact
// averages), and how it was obtained.
struct MomentEstimate {
    double q = 0.0;
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t n_samples = 0;
    Method method = Method::ExactAverage;
};

// Fixed-order pairwise summation; deterministic for a given input order.
double pairwise_sum(std::span<const double> v);

// Mean and standard error of the mean from per-sample values.
struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};
MeanSe mean_and_se(std::span<const double> v);

} // namespace momentlab
