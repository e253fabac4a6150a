#include "vulnlex/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "vulnlex/util.hpp"

namespace vulnlex {

double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    double e = std::exp(x);
    return e / (1.0 + e);
}

double tanh_act(double x) { return std::tanh(x); }

double softplus(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

void sigmoid_inplace(Matrix& m) {
    for (double& v : m.values()) v = sigmoid(v);
}

void tanh_inplace(Matrix& m) {
    for (double& v : m.values()) v = std::tanh(v);
}

MseResult mse_loss(const std::vector<double>& predicted, const std::vector<double>& target) {
    if (predicted.size() != target.size()) throw Error("mse_loss length mismatch");
    if (predicted.empty()) throw Error("mse_loss on empty vectors");
    MseResult r;
    r.gradient.resize(predicted.size());
    double n = static_cast<double>(predicted.size());
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        double d = predicted[i] - target[i];
        r.loss += d * d;
        r.gradient[i] = 2.0 * d / n;
    }
    r.loss /= n;
    return r;
}

AdamState AdamState::for_params(const std::vector<Matrix>& params, double learning_rate, double beta1,
                                double beta2, double epsilon) {
    AdamState s;
    s.learning_rate = learning_rate;
    s.beta1 = beta1;
    s.beta2 = beta2;
    s.epsilon = epsilon;
    s.first_moment.reserve(params.size());
    s.second_moment.reserve(params.size());
    for (const Matrix& p : params) {
        s.first_moment.emplace_back(p.rows(), p.cols());
        s.second_moment.emplace_back(p.rows(), p.cols());
    }
    return s;
}

void adam_step(const std::vector<Matrix*>& params, const std::vector<Matrix>& grads,
               AdamState& state) {
    if (params.size() != grads.size() || params.size() != state.first_moment.size())
        throw Error("adam_step parameter set size mismatch");
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (!params[i]->same_shape(grads[i]) || !params[i]->same_shape(state.first_moment[i]))
            throw Error("adam_step shape mismatch");
        if (!grads[i].all_finite()) throw Error("adam_step: non-finite gradient");
    }
    state.step_count += 1;
    double t = static_cast<double>(state.step_count);
    double bc1 = 1.0 - std::pow(state.beta1, t);
    double bc2 = 1.0 - std::pow(state.beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        double* p = params[i]->data();
        const double* g = grads[i].data();
        double* m = state.first_moment[i].data();
        double* v = state.second_moment[i].data();
        std::size_t n = params[i]->size();
        for (std::size_t j = 0; j < n; ++j) {
            m[j] = state.beta1 * m[j] + (1.0 - state.beta1) * g[j];
            v[j] = state.beta2 * v[j] + (1.0 - state.beta2) * g[j] * g[j];
            double mhat = m[j] / bc1;
            double vhat = v[j] / bc2;
            p[j] -= state.learning_rate * mhat / (std::sqrt(vhat) + state.epsilon);
        }
    }
}

void adam_step(std::vector<Matrix>& params, const std::vector<Matrix>& grads, AdamState& state) {
    std::vector<Matrix*> refs(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) refs[i] = &params[i];
    adam_step(refs, grads, state);
}

double gradient_check(const DifferentiableFn& f, const std::vector<Matrix>& point, double step) {
    if (step <= 0.0) throw Error("gradient_check: step must be positive");
    std::vector<Matrix> analytic = f.gradient(point);
    if (analytic.size() != point.size()) throw Error("gradient_check: gradient arity mismatch");
    std::vector<Matrix> probe = point;
    double max_err = 0.0;
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (!analytic[i].same_shape(point[i])) throw Error("gradient_check: gradient shape mismatch");
        for (std::size_t j = 0; j < point[i].size(); ++j) {
            double saved = probe[i].values()[j];
            probe[i].values()[j] = saved + step;
            double fp = f.value(probe);
            probe[i].values()[j] = saved - step;
            double fm = f.value(probe);
            probe[i].values()[j] = saved;
            if (!std::isfinite(fp) || !std::isfinite(fm))
                throw Error("gradient_check: non-finite function evaluation");
            double numeric = (fp - fm) / (2.0 * step);
            double a = analytic[i].values()[j];
            double denom = std::max({1.0, std::abs(a), std::abs(numeric)});
            max_err = std::max(max_err, std::abs(a - numeric) / denom);
        }
    }
    return max_err;
}

}  // namespace vulnlex
