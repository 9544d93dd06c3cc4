#pragma once

#include "prae/mat.hpp"

#include <cstdint>
#include <vector>

namespace prae {

enum class Activation { Linear, Tanh, ReLU, LeakyReLU };

const char* activation_name(Activation a);
Activation activation_from_name(const std::string& name);

struct LayerSpec {
    int input_width = 0;
    int output_width = 0;
    Activation activation = Activation::Linear;
    double leaky_slope = 0.01; // only read for LeakyReLU
};

struct DenseLayer {
    Mat w; // output_width × input_width
    std::vector<double> b;
    Activation activation = Activation::Linear;
    double leaky_slope = 0.01;

    int in_width() const { return w.cols; }
    int out_width() const { return w.rows; }
};

// Fixed encoder–decoder topology; the only network this project trains.
struct DenseNet {
    std::vector<DenseLayer> encoder;
    std::vector<DenseLayer> decoder;
    int latent_dim = 0;

    int layer_count() const { return static_cast<int>(encoder.size() + decoder.size()); }
    DenseLayer& layer(int i);
    const DenseLayer& layer(int i) const;
    int input_width() const { return encoder.front().in_width(); }
    int output_width() const { return decoder.back().out_width(); }
};

struct ForwardCache {
    Mat input;
    std::vector<Mat> pre;  // affine outputs, per layer
    std::vector<Mat> post; // activations, per layer
    std::vector<Mat> wt;   // transposed weight scratch, per layer
};

struct Gradients {
    std::vector<Mat> dw;
    std::vector<std::vector<double>> db;
};

// Encoder D→hidden…→latent, decoder mirrored, hidden activation everywhere
// except the final decoder layer, which stays linear.
std::vector<LayerSpec> autoencoder_specs(int input_dim, const std::vector<int>& hidden_widths,
                                         int latent_dim, Activation hidden_act, double leaky_slope = 0.01);

// Xavier fan-in init (zero-mean gaussian, variance 1/fan_in), zero biases.
// The bottleneck is the first layer whose output width equals latent_dim.
DenseNet init_dense_net(const std::vector<LayerSpec>& specs, int latent_dim, std::uint64_t rng_seed);

// reconstruction lives in cache.post.back()
void forward(const DenseNet& net, const Mat& batch, ForwardCache& cache);
const Mat& reconstruction(const ForwardCache& cache);

// Exact reverse-mode gradients of the scalar whose per-output gradient is
// output_grad, for the cache produced by forward on the same net.
void backward(const DenseNet& net, const ForwardCache& cache, const Mat& output_grad, Gradients& grads);

// ---------------------------------------------------------------------------
// Adam
// ---------------------------------------------------------------------------

struct AdamState {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    long long t = 0;
    std::vector<std::vector<double>> m; // one slot per parameter tensor
    std::vector<std::vector<double>> v;

    static AdamState for_sizes(const std::vector<std::size_t>& sizes, double lr);
};

AdamState make_adam(const DenseNet& net, double lr);

// Standard bias-corrected update; t increments by exactly one per call.
void adam_step(AdamState& s, const std::vector<double*>& params, const std::vector<const double*>& grads);
void adam_step(AdamState& s, DenseNet& net, const Gradients& g);

// ---------------------------------------------------------------------------
// Activation scalar helpers (exposed for tests)
// ---------------------------------------------------------------------------

double activation_value(Activation a, double x, double slope);
double activation_derivative(Activation a, double pre, double slope);

} // namespace prae
