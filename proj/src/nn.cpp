#include "prae/nn.hpp"

#include "prae/kernels.hpp"
#include "prae/rng.hpp"

#include <cmath>

namespace prae {

const char* activation_name(Activation a) {
    switch (a) {
        case Activation::Linear: return "linear";
        case Activation::Tanh: return "tanh";
        case Activation::ReLU: return "relu";
        case Activation::LeakyReLU: return "leaky_relu";
    }
    return "linear";
}

Activation activation_from_name(const std::string& name) {
    if (name == "linear") return Activation::Linear;
    if (name == "tanh") return Activation::Tanh;
    if (name == "relu") return Activation::ReLU;
    if (name == "leaky_relu") return Activation::LeakyReLU;
    throw ConfigError("unknown activation: " + name);
}

double activation_value(Activation a, double x, double slope) {
    switch (a) {
        case Activation::Linear: return x;
        case Activation::Tanh: return std::tanh(x);
        case Activation::ReLU: return x > 0.0 ? x : 0.0;
        case Activation::LeakyReLU: return x > 0.0 ? x : slope * x;
    }
    return x;
}

double activation_derivative(Activation a, double pre, double slope) {
    switch (a) {
        case Activation::Linear: return 1.0;
        case Activation::Tanh: {
            double th = std::tanh(pre);
            return 1.0 - th * th;
        }
        case Activation::ReLU: return pre > 0.0 ? 1.0 : 0.0;
        case Activation::LeakyReLU: return pre > 0.0 ? 1.0 : slope;
    }
    return 1.0;
}

namespace {

void apply_activation(const Mat& pre, Mat& post, Activation a, double slope) {
    post = pre;
    if (a == Activation::Linear) return;
    for (double& x : post.a) x = activation_value(a, x, slope);
}

void activation_grad_mul(Mat& g, const Mat& pre, Activation a, double slope) {
    if (a == Activation::Linear) return;
    for (std::size_t i = 0; i < g.a.size(); ++i) g.a[i] *= activation_derivative(a, pre.a[i], slope);
}

} // namespace

DenseLayer& DenseNet::layer(int i) {
    return i < static_cast<int>(encoder.size()) ? encoder[i] : decoder[i - encoder.size()];
}

const DenseLayer& DenseNet::layer(int i) const {
    return i < static_cast<int>(encoder.size()) ? encoder[i] : decoder[i - encoder.size()];
}

std::vector<LayerSpec> autoencoder_specs(int input_dim, const std::vector<int>& hidden_widths,
                                         int latent_dim, Activation hidden_act, double leaky_slope) {
    std::vector<LayerSpec> specs;
    int prev = input_dim;
    for (int h : hidden_widths) {
        specs.push_back({prev, h, hidden_act, leaky_slope});
        prev = h;
    }
    specs.push_back({prev, latent_dim, hidden_act, leaky_slope});
    prev = latent_dim;
    for (auto it = hidden_widths.rbegin(); it != hidden_widths.rend(); ++it) {
        specs.push_back({prev, *it, hidden_act, leaky_slope});
        prev = *it;
    }
    specs.push_back({prev, input_dim, Activation::Linear, leaky_slope});
    return specs;
}

DenseNet init_dense_net(const std::vector<LayerSpec>& specs, int latent_dim, std::uint64_t rng_seed) {
    if (specs.empty()) throw ConfigError("init_dense_net: no layers");
    for (const LayerSpec& s : specs)
        if (s.input_width < 1 || s.output_width < 1)
            throw ConfigError("init_dense_net: layer widths must be >= 1");
    for (std::size_t i = 0; i + 1 < specs.size(); ++i)
        if (specs[i].output_width != specs[i + 1].input_width)
            throw ConfigError("init_dense_net: layer " + std::to_string(i) + " outputs " +
                              std::to_string(specs[i].output_width) + " but layer " + std::to_string(i + 1) +
                              " expects " + std::to_string(specs[i + 1].input_width));

    int split = -1;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (specs[i].output_width == latent_dim) {
            split = static_cast<int>(i);
            break;
        }
    }
    if (split < 0 || split + 1 == static_cast<int>(specs.size()))
        throw ConfigError("init_dense_net: no bottleneck layer of width " + std::to_string(latent_dim));
    if (specs.front().input_width != specs.back().output_width)
        throw ConfigError("init_dense_net: net must map back to its input dimension");

    RngStream rng(rng_seed);
    DenseNet net;
    net.latent_dim = latent_dim;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const LayerSpec& s = specs[i];
        DenseLayer layer;
        layer.activation = s.activation;
        layer.leaky_slope = s.leaky_slope;
        layer.w.assign(s.output_width, s.input_width);
        double scale = std::sqrt(1.0 / s.input_width);
        for (double& x : layer.w.a) x = scale * rng.gaussian();
        layer.b.assign(s.output_width, 0.0);
        if (static_cast<int>(i) <= split)
            net.encoder.push_back(std::move(layer));
        else
            net.decoder.push_back(std::move(layer));
    }
    return net;
}

void forward(const DenseNet& net, const Mat& batch, ForwardCache& cache) {
    require_shape(batch.cols == net.input_width(),
                  "forward: batch has " + std::to_string(batch.cols) + " columns, net expects " +
                      std::to_string(net.input_width()));
    const int depth = net.layer_count();
    cache.input = batch;
    cache.pre.resize(depth);
    cache.post.resize(depth);
    cache.wt.resize(depth);
    const Mat* x = &cache.input;
    for (int i = 0; i < depth; ++i) {
        const DenseLayer& l = net.layer(i);
        kernels::transpose(l.w, cache.wt[i]);
        kernels::matmul(*x, cache.wt[i], cache.pre[i]);
        kernels::add_row_vector(cache.pre[i], l.b);
        apply_activation(cache.pre[i], cache.post[i], l.activation, l.leaky_slope);
        x = &cache.post[i];
    }
}

const Mat& reconstruction(const ForwardCache& cache) { return cache.post.back(); }

void backward(const DenseNet& net, const ForwardCache& cache, const Mat& output_grad, Gradients& grads) {
    const int depth = net.layer_count();
    require_shape(static_cast<int>(cache.pre.size()) == depth && static_cast<int>(cache.post.size()) == depth,
                  "backward: cache depth does not match net");
    require_shape(output_grad.rows == cache.input.rows && output_grad.cols == net.output_width(),
                  "backward: output_grad shape mismatch");
    for (int i = 0; i < depth; ++i)
        require_shape(cache.pre[i].rows == cache.input.rows && cache.pre[i].cols == net.layer(i).out_width(),
                      "backward: cache layer " + std::to_string(i) + " shape mismatch");

    grads.dw.resize(depth);
    grads.db.resize(depth);
    Mat g = output_grad;
    Mat g_prev;
    for (int i = depth - 1; i >= 0; --i) {
        const DenseLayer& l = net.layer(i);
        activation_grad_mul(g, cache.pre[i], l.activation, l.leaky_slope);
        const Mat& below = (i == 0) ? cache.input : cache.post[i - 1];
        kernels::matmul_tn(g, below, grads.dw[i]);
        kernels::colsum(g, grads.db[i]);
        if (i > 0) {
            kernels::matmul(g, l.w, g_prev);
            std::swap(g, g_prev);
        }
    }
}

AdamState AdamState::for_sizes(const std::vector<std::size_t>& sizes, double lr) {
    AdamState s;
    s.lr = lr;
    s.m.reserve(sizes.size());
    s.v.reserve(sizes.size());
    for (std::size_t n : sizes) {
        s.m.emplace_back(n, 0.0);
        s.v.emplace_back(n, 0.0);
    }
    return s;
}

AdamState make_adam(const DenseNet& net, double lr) {
    std::vector<std::size_t> sizes;
    for (int i = 0; i < net.layer_count(); ++i) {
        sizes.push_back(net.layer(i).w.size());
        sizes.push_back(net.layer(i).b.size());
    }
    return AdamState::for_sizes(sizes, lr);
}

void adam_step(AdamState& s, const std::vector<double*>& params, const std::vector<const double*>& grads) {
    require_shape(params.size() == s.m.size() && grads.size() == s.m.size(),
                  "adam_step: tensor count mismatch");
    s.t += 1;
    const double bc1 = 1.0 - std::pow(s.beta1, static_cast<double>(s.t));
    const double bc2 = 1.0 - std::pow(s.beta2, static_cast<double>(s.t));
    for (std::size_t k = 0; k < params.size(); ++k) {
        double* p = params[k];
        const double* g = grads[k];
        std::vector<double>& m = s.m[k];
        std::vector<double>& v = s.v[k];
        for (std::size_t i = 0; i < m.size(); ++i) {
            m[i] = s.beta1 * m[i] + (1.0 - s.beta1) * g[i];
            v[i] = s.beta2 * v[i] + (1.0 - s.beta2) * g[i] * g[i];
            double mhat = m[i] / bc1;
            double vhat = v[i] / bc2;
            p[i] -= s.lr * mhat / (std::sqrt(vhat) + s.eps);
        }
    }
}

void adam_step(AdamState& s, DenseNet& net, const Gradients& g) {
    std::vector<double*> params;
    std::vector<const double*> grads;
    for (int i = 0; i < net.layer_count(); ++i) {
        params.push_back(net.layer(i).w.a.data());
        grads.push_back(g.dw[i].a.data());
        params.push_back(net.layer(i).b.data());
        grads.push_back(g.db[i].data());
    }
    adam_step(s, params, grads);
}

} // namespace prae
