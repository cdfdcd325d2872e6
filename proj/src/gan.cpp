#include "cgfl/gan.hpp"

#include <cmath>
#include <sstream>

namespace cgfl {
namespace {

std::vector<double> to_real(const std::vector<std::uint8_t>& row) {
    return {row.begin(), row.end()};
}

// One discriminator update on a batch with a common target; returns the
// mean BCE and counts correct classifications against the 0.5 cut.
struct DBatchResult {
    double loss = 0.0;
    std::size_t correct = 0;
};

DBatchResult discriminator_pass(DenseNet& d, const std::vector<std::vector<double>>& batch,
                                double target, double learning_rate, bool update) {
    DBatchResult result;
    Gradients total = zero_gradients(d);
    const std::vector<double> target_vec{target};
    for (const auto& sample : batch) {
        const ForwardTrace trace = net_forward_trace(d, sample);
        const double p = trace.post.back()[0];
        result.loss += bce_loss(trace.post.back(), target_vec);
        if ((target >= 0.5) == (p > 0.5)) ++result.correct;
        if (update) {
            const auto grad = bce_grad(trace.post.back(), target_vec);
            accumulate(total, net_backward(d, sample, trace, grad));
        }
    }
    result.loss /= static_cast<double>(batch.size());
    if (update) {
        scale(total, 1.0 / static_cast<double>(batch.size()));
        sgd_step(d, total, learning_rate);
    }
    return result;
}

}  // namespace

std::vector<double> NoiseSampler::draw() {
    std::vector<double> z(dim_);
    for (auto& v : z) v = rng_.normal();
    return z;
}

GanModel train_gan(const std::vector<std::vector<std::uint8_t>>& failing_rows,
                   const GanConfig& config) {
    if (failing_rows.empty())
        throw InputError("gan: no failing rows to learn from");
    const std::size_t width = failing_rows.front().size();
    for (const auto& row : failing_rows)
        if (row.size() != width)
            throw InputError("gan: failing rows have inconsistent widths");

    GanModel model;
    model.config = config;
    Rng g_init(derive_seed(config.seed, "gan.generator.init"));
    Rng d_init(derive_seed(config.seed, "gan.discriminator.init"));
    model.generator = make_net({config.latent_dim, config.hidden_width, width},
                               {Activation::ReLU, Activation::Sigmoid}, g_init);
    model.discriminator = make_net({width, config.hidden_width, 1},
                                   {Activation::LeakyReLU, Activation::Sigmoid},
                                   d_init);

    NoiseSampler noise(config.latent_dim, derive_seed(config.seed, "gan.noise"));
    std::vector<std::vector<double>> real;
    real.reserve(failing_rows.size());
    for (const auto& row : failing_rows) real.push_back(to_real(row));
    const std::size_t batch = real.size();
    const double lr = config.train.learning_rate;
    const std::vector<double> one{1.0};

    model.log.reserve(config.epochs);
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        EpochLog entry;

        // Discriminator phase, generator frozen.
        for (std::size_t step = 0; step < config.d_steps_per_g_step; ++step) {
            std::vector<std::vector<double>> fake;
            fake.reserve(batch);
            for (std::size_t i = 0; i < batch; ++i)
                fake.push_back(net_forward(model.generator, noise.draw()));
            const auto real_res =
                discriminator_pass(model.discriminator, real, 1.0, lr, true);
            const auto fake_res =
                discriminator_pass(model.discriminator, fake, 0.0, lr, true);
            entry.d_loss = real_res.loss + fake_res.loss;
            entry.d_accuracy =
                static_cast<double>(real_res.correct + fake_res.correct) /
                static_cast<double>(2 * batch);
        }

        // Generator phase through the frozen discriminator.
        Gradients g_total = zero_gradients(model.generator);
        double g_loss = 0.0;
        for (std::size_t i = 0; i < batch; ++i) {
            const auto z = noise.draw();
            const ForwardTrace g_trace = net_forward_trace(model.generator, z);
            const auto& generated = g_trace.post.back();
            const ForwardTrace d_trace =
                net_forward_trace(model.discriminator, generated);
            g_loss += bce_loss(d_trace.post.back(), one);
            const auto d_grad = bce_grad(d_trace.post.back(), one);
            const Gradients through_d =
                net_backward(model.discriminator, generated, d_trace, d_grad);
            accumulate(g_total,
                       net_backward(model.generator, z, g_trace, through_d.input));
        }
        scale(g_total, 1.0 / static_cast<double>(batch));
        sgd_step(model.generator, g_total, lr);
        entry.g_loss = g_loss / static_cast<double>(batch);

        if (!std::isfinite(entry.d_loss) || !std::isfinite(entry.g_loss))
            throw TrainingError("gan: non-finite loss at epoch " +
                                std::to_string(epoch));
        model.log.push_back(entry);
    }
    return model;
}

std::vector<std::vector<std::uint8_t>> sample_synthetic(const GanModel& model,
                                                        std::size_t n,
                                                        NoiseSampler& sampler) {
    if (sampler.dim() != model.config.latent_dim)
        throw InputError("sampler dimension does not match the model latent dim");
    std::vector<std::vector<std::uint8_t>> samples;
    samples.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        bool accepted = false;
        for (int attempt = 0; attempt < 100 && !accepted; ++attempt) {
            const auto raw = net_forward(model.generator, sampler.draw());
            std::vector<std::uint8_t> bits(raw.size());
            bool any = false;
            for (std::size_t j = 0; j < raw.size(); ++j) {
                bits[j] = raw[j] > model.config.binarize_threshold ? 1 : 0;
                any |= bits[j] != 0;
            }
            if (any) {
                samples.push_back(std::move(bits));
                accepted = true;
            }
        }
        if (!accepted)
            throw TrainingError(
                "gan: generator collapsed to empty coverage (100 all-zero draws)");
    }
    return samples;
}

std::string training_log_csv(const GanModel& model) {
    std::ostringstream out;
    out << "epoch,d_loss,g_loss\n";
    for (std::size_t e = 0; e < model.log.size(); ++e)
        out << e + 1 << ',' << model.log[e].d_loss << ',' << model.log[e].g_loss
            << '\n';
    return out.str();
}

}  // namespace cgfl
