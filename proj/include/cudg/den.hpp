#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cudg/feasibility.hpp"
#include "cudg/graph.hpp"
#include "cudg/neural.hpp"

namespace cudg {

// Fixed-weight distance calculator: a difference layer (weights +-1, no bias)
// feeding a square activation, then a sum layer (weights 0/1, no bias). Maps
// flattened coordinates to squared pair distances. Both layers are sparse and
// perfectly structured, so they are applied directly instead of via dense
// matrix products; dense materializations are provided for verification.
struct DistanceCalculator {
    int n = 0;
    int N = 0;

    std::size_t pairs() const { return pair_count(n); }
    std::size_t diff_width() const { return static_cast<std::size_t>(N) * pairs(); }

    // u receives the pre-square difference values (diff_width), needed by
    // backward. v_k = sum over axes of (p_i_axis - p_j_axis)^2.
    std::vector<double> forward(const std::vector<double>& I, std::vector<double>& u) const;
    std::vector<double> forward(const std::vector<double>& I) const;

    // d loss / d I from d loss / d v and the cached difference values.
    std::vector<double> backward(const std::vector<double>& dv, const std::vector<double>& u) const;

    // Dense row-major weight matrices equivalent to the structured ops.
    std::vector<double> difference_weights() const;  // diff_width x (n*N)
    std::vector<double> sum_weights() const;         // pairs x diff_width
};

DistanceCalculator make_distance_calculator(int n, int N);

// Trainable autoencoder (n*N -> 64 -> 36 -> 18 -> 9 -> 18 -> 36 -> 64 -> n*N,
// ReLU hidden, L*tanh output, biases throughout) composed with the fixed
// distance calculator.
struct DenModel {
    int n = 0;
    int N = 2;
    double L = 50.0;
    double p_drop = 0.0;
    std::vector<DenseLayer> autoencoder;
    DistanceCalculator calculator;
};

DenModel build_den(int n, int N, double L, double p_drop);

// Axis-major flattening: I[k] = x_k, I[n+k] = y_k, I[2n+k] = z_k.
std::vector<double> flatten_coords(const Embedding& emb);
Embedding unflatten_coords(const std::vector<double>& I, int n, int dim);

struct DenForward {
    std::vector<double> coords_flat;  // autoencoder output (the coordinates' layer)
    std::vector<double> u;            // difference-layer values, pre-square
    std::vector<double> v;            // squared pair distances
    StackCache cache;
};

DenForward den_forward(const DenModel& model, const std::vector<double>& I, bool training,
                       std::mt19937_64& rng);

// Backpropagates d loss / d v through the fixed calculator and the cached
// autoencoder pass; parameter gradients cover the autoencoder only.
StackGrads den_backward(const DenModel& model, const DenForward& fwd, const std::vector<double>& dv);

}  // namespace cudg
