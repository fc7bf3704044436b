#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "ggm/chains.hpp"
#include "ggm/volume.hpp"

namespace ggm {

/// Pinned gradient measure: class pin_class fixed at pin_vertex.
struct PinnedMeasureSpec {
    LayerKernel kernel;
    FiniteTreeVolume volume;
    int pin_vertex = 0;
    int pin_class = 0;
};

/// alpha-mixture of pinned measures. pin_vertex only selects where the
/// mixture is written down; the measure does not depend on it.
struct GGMSpec {
    LayerKernel kernel;
    FuzzyChain chain;
    FiniteTreeVolume volume;
    int pin_vertex = 0;
};

GGMSpec make_ggm_spec(const LayerKernel& kernel, const FiniteTreeVolume& volume, int pin_vertex = 0);

/// Cap on (2M + 1)^edges for operations that visit every configuration.
struct EnumerationBudget {
    double max_configurations = 1e7;
};

/// Product of Pbar factors along edges oriented away from the pin.
double pinned_prob_product(const PinnedMeasureSpec& spec, const GradientConfiguration& zeta);

/// Boundary-law weight prod_{y in boundary} l(layer y) prod_b Q(zeta_b),
/// normalized over the window. Inner vertices with missing neighbours carry
/// N(layer)^{d + 1 - degree}, the mass of the absent edges.
double pinned_prob_bl(const PinnedMeasureSpec& spec, const GradientConfiguration& zeta);

/// sum_s alpha(s) times the pinned product at spec.pin_vertex.
double ggm_prob(const GGMSpec& spec, const GradientConfiguration& zeta);
/// Same mixture written down at another pin vertex.
double ggm_prob_at(const GGMSpec& spec, const GradientConfiguration& zeta, int pin_vertex);

/// Mixture form without alpha: sum over the root class of the boundary-law
/// weight, normalized over the window.
double alt_ggm_prob(const LayerKernel& kernel, const FiniteTreeVolume& volume,
                    const GradientConfiguration& zeta);

/// Number of windowed configurations on the volume.
double configuration_count(const FiniteTreeVolume& volume, long cutoff);

/// Largest differences between the two representations over every windowed
/// configuration (all pin classes at spec.pin_vertex), plus total masses.
struct RepresentationGaps {
    double pinned = 0.0;
    double ggm = 0.0;
    double product_mass_error = 0.0;
    double bl_mass_error = 0.0;
    double ggm_mass_error = 0.0;
    double alt_mass_error = 0.0;
    std::uint64_t configurations = 0;
};
RepresentationGaps compare_representations(const GGMSpec& spec, const EnumerationBudget& budget = {});

/// Layer labels (mod q) of every vertex given the class at the pin.
std::vector<int> induced_layers(const FiniteTreeVolume& volume, const GradientConfiguration& zeta,
                                int q, int pin_vertex, int pin_class);

using CouplingFunction = std::function<double(const GradientConfiguration&, const std::vector<int>&)>;

/// Expectation of F(zeta, layers) under the joint law of increments and
/// layer labels: sum_{zeta, s} alpha(s) prod Pbar F.
double coupling_expectation(const GGMSpec& spec, const CouplingFunction& F,
                            const EnumerationBudget& budget = {});

/// Marginal law of the increments on the listed edges, by enumeration.
std::map<std::vector<long>, double> ggm_marginal(const GGMSpec& spec, const std::vector<int>& edges,
                                                 const EnumerationBudget& budget = {});

/// Root layer drawn from alpha, then increments edge by edge away from the
/// root. Deterministic in the seed.
GradientConfiguration sample_ggm(const GGMSpec& spec, std::uint64_t seed);

/// n samples; sample i depends only on (seed, i), not on the worker count.
std::vector<GradientConfiguration> sample_ggm(const GGMSpec& spec, std::uint64_t seed, std::size_t n,
                                              int workers = 0);

/// Total-variation distance between the marginal of the spec's pinned (and
/// mixed) boundary-law measure on an inner vertex set and the measure built
/// directly on it. The inner set must contain the root and the pin.
double check_consistency(const PinnedMeasureSpec& spec, const std::vector<int>& inner,
                         const EnumerationBudget& budget = {});

/// Largest pairwise total-variation distance between the mixture written at
/// each pin vertex.
double check_homogeneity(const GGMSpec& spec, const std::vector<int>& pins,
                         const EnumerationBudget& budget = {});

struct DlrReport {
    double pinned = 0.0;    // pinned conditional vs normalized Q product
    double mixture = 0.0;   // mixture conditional vs normalized Q product
    double agreement = 0.0; // pinned vs mixture conditionals
    double max() const;
};

/// Conditional law of the increments inside `inner` (a connected host vertex
/// set whose leaves form its boundary) given every outside increment and the
/// relative heights of the inner boundary. Each conditional is compared in
/// total variation with prod Q restricted to the same height class.
DlrReport check_restricted_dlr(const PinnedMeasureSpec& spec, const std::vector<int>& inner,
                               const EnumerationBudget& budget = {});

} // namespace ggm
