#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cgfl/errors.hpp"
#include "cgfl/rng.hpp"

namespace cgfl {

enum class Activation : std::uint8_t { ReLU, LeakyReLU, Sigmoid, Identity };

constexpr double kLeakySlope = 0.2;
constexpr double kProbEpsilon = 1e-7;  // clamp before logs in BCE

struct DenseLayer {
    std::size_t in = 0;
    std::size_t out = 0;
    std::vector<double> weights;  // row-major, out x in
    std::vector<double> biases;   // out
    Activation activation = Activation::Identity;
};

struct DenseNet {
    std::vector<DenseLayer> layers;

    std::size_t input_width() const { return layers.front().in; }
    std::size_t output_width() const { return layers.back().out; }
};

struct TrainConfig {
    double learning_rate = 0.05;
    std::size_t batch_size = 32;
    std::size_t epochs = 0;
    std::uint64_t seed = 0;
};

// Activations of every layer from one forward pass; needed by the backward
// pass. post.back() is the network output.
struct ForwardTrace {
    std::vector<std::vector<double>> pre;   // affine outputs per layer
    std::vector<std::vector<double>> post;  // activated outputs per layer
};

// Same shapes as the corresponding DenseNet parameters.
struct Gradients {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
    // Gradient of the loss with respect to the network input; lets a frozen
    // discriminator pass its signal back into the generator.
    std::vector<double> input;
};

// Glorot-uniform initialized network; widths.front() is the input width.
DenseNet make_net(const std::vector<std::size_t>& widths,
                  const std::vector<Activation>& activations, Rng& rng);

std::vector<double> net_forward(const DenseNet& net, std::span<const double> input);
ForwardTrace net_forward_trace(const DenseNet& net, std::span<const double> input);

// Exact analytic gradients given dLoss/dOutput.
Gradients net_backward(const DenseNet& net, std::span<const double> input,
                       const ForwardTrace& trace, std::span<const double> loss_grad);

Gradients zero_gradients(const DenseNet& net);
void accumulate(Gradients& total, const Gradients& delta);
void scale(Gradients& grads, double factor);
void sgd_step(DenseNet& net, const Gradients& grads, double learning_rate);

// Mean binary cross entropy; predictions are clamped to
// [kProbEpsilon, 1 - kProbEpsilon] before the logs.
double bce_loss(std::span<const double> prediction, std::span<const double> target);
std::vector<double> bce_grad(std::span<const double> prediction,
                             std::span<const double> target);

// Textual parameter dump, versioned; round-trips exactly via hex floats.
std::string save_net(const DenseNet& net);
DenseNet load_net(std::string_view text);

}  // namespace cgfl
