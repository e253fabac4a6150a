#pragma once

#include <functional>
#include <vector>

#include "vulnlex/matrix.hpp"

namespace vulnlex {

// Gate nonlinearities. Stable for |x| up to at least 700.
double sigmoid(double x);
double tanh_act(double x);
// log(1 + exp(x)) without overflow; -log(sigmoid(x)) == softplus(-x).
double softplus(double x);
// Derivatives expressed through the activation value itself.
inline double sigmoid_prime_from_value(double s) { return s * (1.0 - s); }
inline double tanh_prime_from_value(double t) { return 1.0 - t * t; }

void sigmoid_inplace(Matrix& m);
void tanh_inplace(Matrix& m);

struct MseResult {
    double loss = 0.0;
    std::vector<double> gradient;  // d loss / d predicted
};

// loss = (1/n) * sum (p-t)^2, gradient = (2/n) * (p-t).
MseResult mse_loss(const std::vector<double>& predicted, const std::vector<double>& target);

struct AdamState {
    long long step_count = 0;
    std::vector<Matrix> first_moment;
    std::vector<Matrix> second_moment;
    double learning_rate = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    static AdamState for_params(const std::vector<Matrix>& params, double learning_rate = 0.001,
                                double beta1 = 0.9, double beta2 = 0.999, double epsilon = 1e-8);
};

// Bias-corrected Adam update, applied in place. Throws on shape mismatch or
// non-finite gradients. The pointer overload updates parameters that live
// inside a larger structure.
void adam_step(std::vector<Matrix>& params, const std::vector<Matrix>& grads, AdamState& state);
void adam_step(const std::vector<Matrix*>& params, const std::vector<Matrix>& grads,
               AdamState& state);

// A scalar function of a parameter set together with its analytic gradient.
struct DifferentiableFn {
    std::function<double(const std::vector<Matrix>&)> value;
    std::function<std::vector<Matrix>(const std::vector<Matrix>&)> gradient;
};

// Central finite differences against the analytic gradient. Returns the max
// over coordinates of |analytic - numeric| / max(1, |analytic|, |numeric|).
double gradient_check(const DifferentiableFn& f, const std::vector<Matrix>& point, double step);

}  // namespace vulnlex
