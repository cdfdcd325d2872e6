#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cgfl/neural.hpp"

namespace cgfl {

struct GanConfig {
    std::size_t latent_dim = 100;
    std::size_t epochs = 1000;
    std::size_t d_steps_per_g_step = 1;
    std::size_t hidden_width = 128;
    double binarize_threshold = 0.5;
    std::uint64_t seed = 0;
    TrainConfig train{};
};

struct EpochLog {
    double d_loss = 0.0;  // BCE on real rows + BCE on generated rows
    double g_loss = 0.0;  // BCE of D(G(z)) against target 1
    double d_accuracy = 0.0;  // fraction of real/fake pairs D classifies right
};

struct GanModel {
    DenseNet generator;      // latent_dim -> hidden (ReLU) -> K (Sigmoid)
    DenseNet discriminator;  // K -> hidden (LeakyReLU 0.2) -> 1 (Sigmoid)
    GanConfig config;
    std::vector<EpochLog> log;  // one entry per epoch

    std::size_t context_width() const { return generator.output_width(); }
};

// Reproducible stream of standard-normal latent vectors.
class NoiseSampler {
public:
    NoiseSampler(std::size_t dim, std::uint64_t seed) : dim_(dim), rng_(seed) {}
    std::vector<double> draw();
    std::size_t dim() const { return dim_; }

private:
    std::size_t dim_;
    Rng rng_;
};

// Alternating adversarial training on the failing context rows: per epoch,
// the discriminator trains first (real rows toward 1, generated toward 0,
// d_steps_per_g_step times with the generator frozen), then the generator
// trains through the frozen discriminator toward 1.
// Throws InputError on an empty failing set, TrainingError on a
// non-finite loss.
GanModel train_gan(const std::vector<std::vector<std::uint8_t>>& failing_rows,
                   const GanConfig& config);

// n generator outputs binarized at config.binarize_threshold, each carrying
// the Fail label by construction. All-zero vectors are rejected and redrawn,
// at most 100 attempts per sample; exhaustion throws TrainingError.
std::vector<std::vector<std::uint8_t>> sample_synthetic(const GanModel& model,
                                                        std::size_t n,
                                                        NoiseSampler& sampler);

// CSV: epoch,d_loss,g_loss
std::string training_log_csv(const GanModel& model);

}  // namespace cgfl
