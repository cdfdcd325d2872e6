#include "cgfl/neural.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cgfl {
namespace {

double apply_activation(Activation act, double x) {
    switch (act) {
        case Activation::ReLU: return x > 0.0 ? x : 0.0;
        case Activation::LeakyReLU: return x > 0.0 ? x : kLeakySlope * x;
        case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
        case Activation::Identity: return x;
    }
    return x;
}

// Derivative in terms of the pre-activation value (and the activated value
// for sigmoid, where it is cheaper).
double activation_grad(Activation act, double pre, double post) {
    switch (act) {
        case Activation::ReLU: return pre > 0.0 ? 1.0 : 0.0;
        case Activation::LeakyReLU: return pre > 0.0 ? 1.0 : kLeakySlope;
        case Activation::Sigmoid: return post * (1.0 - post);
        case Activation::Identity: return 1.0;
    }
    return 1.0;
}

const char* activation_name(Activation act) {
    switch (act) {
        case Activation::ReLU: return "relu";
        case Activation::LeakyReLU: return "lrelu";
        case Activation::Sigmoid: return "sigmoid";
        case Activation::Identity: return "identity";
    }
    return "identity";
}

Activation activation_from(const std::string& name) {
    if (name == "relu") return Activation::ReLU;
    if (name == "lrelu") return Activation::LeakyReLU;
    if (name == "sigmoid") return Activation::Sigmoid;
    if (name == "identity") return Activation::Identity;
    throw InputError("unknown activation '" + name + "' in checkpoint");
}

}  // namespace

DenseNet make_net(const std::vector<std::size_t>& widths,
                  const std::vector<Activation>& activations, Rng& rng) {
    if (widths.size() < 2 || activations.size() != widths.size() - 1)
        throw InputError("network needs >=2 widths and one activation per layer");
    DenseNet net;
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        DenseLayer layer;
        layer.in = widths[l];
        layer.out = widths[l + 1];
        layer.activation = activations[l];
        const double a = std::sqrt(6.0 / static_cast<double>(layer.in + layer.out));
        layer.weights.resize(layer.in * layer.out);
        for (auto& w : layer.weights) w = rng.uniform(-a, a);
        layer.biases.assign(layer.out, 0.0);
        net.layers.push_back(std::move(layer));
    }
    return net;
}

ForwardTrace net_forward_trace(const DenseNet& net, std::span<const double> input) {
    if (input.size() != net.input_width())
        throw InputError("forward: input width " + std::to_string(input.size()) +
                         " != " + std::to_string(net.input_width()));
    ForwardTrace trace;
    std::vector<double> current(input.begin(), input.end());
    for (const auto& layer : net.layers) {
        std::vector<double> pre(layer.out);
        for (std::size_t o = 0; o < layer.out; ++o) {
            double sum = layer.biases[o];
            const double* w = layer.weights.data() + o * layer.in;
            for (std::size_t i = 0; i < layer.in; ++i) sum += w[i] * current[i];
            pre[o] = sum;
        }
        std::vector<double> post(layer.out);
        for (std::size_t o = 0; o < layer.out; ++o)
            post[o] = apply_activation(layer.activation, pre[o]);
        trace.pre.push_back(std::move(pre));
        current = post;
        trace.post.push_back(std::move(post));
    }
    return trace;
}

std::vector<double> net_forward(const DenseNet& net, std::span<const double> input) {
    return net_forward_trace(net, input).post.back();
}

Gradients net_backward(const DenseNet& net, std::span<const double> input,
                       const ForwardTrace& trace, std::span<const double> loss_grad) {
    if (loss_grad.size() != net.output_width())
        throw InputError("backward: loss gradient width mismatch");

    Gradients grads = zero_gradients(net);
    std::vector<double> delta(loss_grad.begin(), loss_grad.end());
    for (std::size_t l = net.layers.size(); l-- > 0;) {
        const auto& layer = net.layers[l];
        const auto& pre = trace.pre[l];
        const auto& post = trace.post[l];
        const std::span<const double> below =
            l == 0 ? input : std::span<const double>(trace.post[l - 1]);

        // dL/d(pre-activation)
        for (std::size_t o = 0; o < layer.out; ++o)
            delta[o] *= activation_grad(layer.activation, pre[o], post[o]);

        auto& wg = grads.weights[l];
        for (std::size_t o = 0; o < layer.out; ++o) {
            const double d = delta[o];
            grads.biases[l][o] += d;
            double* row = wg.data() + o * layer.in;
            for (std::size_t i = 0; i < layer.in; ++i) row[i] += d * below[i];
        }

        std::vector<double> next(layer.in, 0.0);
        for (std::size_t o = 0; o < layer.out; ++o) {
            const double d = delta[o];
            const double* w = layer.weights.data() + o * layer.in;
            for (std::size_t i = 0; i < layer.in; ++i) next[i] += d * w[i];
        }
        delta = std::move(next);
    }
    grads.input = std::move(delta);
    return grads;
}

Gradients zero_gradients(const DenseNet& net) {
    Gradients grads;
    for (const auto& layer : net.layers) {
        grads.weights.emplace_back(layer.weights.size(), 0.0);
        grads.biases.emplace_back(layer.biases.size(), 0.0);
    }
    grads.input.assign(net.input_width(), 0.0);
    return grads;
}

void accumulate(Gradients& total, const Gradients& delta) {
    for (std::size_t l = 0; l < total.weights.size(); ++l) {
        for (std::size_t k = 0; k < total.weights[l].size(); ++k)
            total.weights[l][k] += delta.weights[l][k];
        for (std::size_t k = 0; k < total.biases[l].size(); ++k)
            total.biases[l][k] += delta.biases[l][k];
    }
}

void scale(Gradients& grads, double factor) {
    for (auto& layer : grads.weights)
        for (auto& w : layer) w *= factor;
    for (auto& layer : grads.biases)
        for (auto& b : layer) b *= factor;
    for (auto& g : grads.input) g *= factor;
}

void sgd_step(DenseNet& net, const Gradients& grads, double learning_rate) {
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        auto& layer = net.layers[l];
        for (std::size_t k = 0; k < layer.weights.size(); ++k)
            layer.weights[k] -= learning_rate * grads.weights[l][k];
        for (std::size_t k = 0; k < layer.biases.size(); ++k)
            layer.biases[k] -= learning_rate * grads.biases[l][k];
    }
}

double bce_loss(std::span<const double> prediction, std::span<const double> target) {
    if (prediction.size() != target.size())
        throw InputError("bce: prediction/target length mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < prediction.size(); ++i) {
        const double p =
            std::clamp(prediction[i], kProbEpsilon, 1.0 - kProbEpsilon);
        total += -(target[i] * std::log(p) + (1.0 - target[i]) * std::log(1.0 - p));
    }
    return total / static_cast<double>(prediction.size());
}

std::vector<double> bce_grad(std::span<const double> prediction,
                             std::span<const double> target) {
    if (prediction.size() != target.size())
        throw InputError("bce: prediction/target length mismatch");
    const double n = static_cast<double>(prediction.size());
    std::vector<double> grad(prediction.size());
    for (std::size_t i = 0; i < prediction.size(); ++i) {
        const double p =
            std::clamp(prediction[i], kProbEpsilon, 1.0 - kProbEpsilon);
        grad[i] = (-target[i] / p + (1.0 - target[i]) / (1.0 - p)) / n;
    }
    return grad;
}

std::string save_net(const DenseNet& net) {
    std::ostringstream out;
    out << "densenet v1\n" << net.layers.size() << "\n";
    char buf[40];
    for (const auto& layer : net.layers) {
        out << layer.in << ' ' << layer.out << ' '
            << activation_name(layer.activation) << "\n";
        for (double w : layer.weights) {
            std::snprintf(buf, sizeof buf, "%a\n", w);
            out << buf;
        }
        for (double b : layer.biases) {
            std::snprintf(buf, sizeof buf, "%a\n", b);
            out << buf;
        }
    }
    return out.str();
}

DenseNet load_net(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string magic, version;
    in >> magic >> version;
    if (magic != "densenet" || version != "v1")
        throw InputError("not a densenet v1 checkpoint");
    std::size_t layer_count = 0;
    in >> layer_count;
    DenseNet net;
    for (std::size_t l = 0; l < layer_count; ++l) {
        DenseLayer layer;
        std::string act;
        if (!(in >> layer.in >> layer.out >> act))
            throw InputError("truncated checkpoint header");
        layer.activation = activation_from(act);
        layer.weights.resize(layer.in * layer.out);
        layer.biases.resize(layer.out);
        std::string tok;
        for (auto& w : layer.weights) {
            if (!(in >> tok)) throw InputError("truncated checkpoint weights");
            w = std::strtod(tok.c_str(), nullptr);
        }
        for (auto& b : layer.biases) {
            if (!(in >> tok)) throw InputError("truncated checkpoint biases");
            b = std::strtod(tok.c_str(), nullptr);
        }
        net.layers.push_back(std::move(layer));
    }
    if (net.layers.empty()) throw InputError("checkpoint has no layers");
    return net;
}

}  // namespace cgfl
