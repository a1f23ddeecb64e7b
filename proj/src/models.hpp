// CDF models used to drive partitioning: a monotonic two-layer linear RMI and
// a branchless splitter tree with equality buckets for duplicate-heavy inputs.

#ifndef LSORT_MODELS_HPP
#define LSORT_MODELS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "keys.hpp"

namespace lsort {

struct LinearModel {
    double slope = 0.0;
    double intercept = 0.0;

    double eval(double x) const { return slope * x + intercept; }
};

// Two-layer recursive model index: a root linear model routes a key to one of
// submodel_count() second-level linear models, each clamped to a per-submodel
// output range so that predictions are nondecreasing over the whole key space,
// not just the training sample. Predictions always land in [0, 1].
class Rmi {
public:
    // sorted_sample must be nondecreasing with at least 2 elements.
    // Throws std::invalid_argument otherwise.
    static Rmi train(std::span<const Key> sorted_sample, std::uint32_t submodels);

    double predict(Key x) const {
        double xn = normalize(x);
        std::size_t i = route(xn);
        double v = sub_[i].eval(xn);
        if (v < clamp_lo_[i]) v = clamp_lo_[i];
        if (v > clamp_hi_[i]) v = clamp_hi_[i];
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
        return v;
    }

    std::size_t submodel_count() const { return sub_.size(); }
    const LinearModel& root() const { return root_; }
    const LinearModel& submodel(std::size_t i) const { return sub_[i]; }
    double clamp_lo(std::size_t i) const { return clamp_lo_[i]; }
    double clamp_hi(std::size_t i) const { return clamp_hi_[i]; }

    bool operator==(const Rmi&) const = default;

private:
    friend Rmi enforce_monotonic(Rmi rmi, std::span<const Key> sorted_sample);

    double normalize(Key x) const {
        return (static_cast<double>(x) - key_base_) * key_scale_;
    }

    std::size_t route(double xn) const {
        double t = root_.eval(xn) * static_cast<double>(sub_.size());
        if (!(t > 0.0)) return 0;
        std::size_t i = static_cast<std::size_t>(t);
        return i >= sub_.size() ? sub_.size() - 1 : i;
    }

    LinearModel root_;
    std::vector<LinearModel> sub_;
    std::vector<double> clamp_lo_;
    std::vector<double> clamp_hi_;
    double key_base_ = 0.0;  // sample min as double
    double key_scale_ = 0.0; // 1 / (sample max - sample min), 0 when degenerate
};

// Recomputes slope clamps and the nondecreasing clamp-bound sequence from the
// sample. Rmi::train already calls this; exposed so the constraint can be
// re-applied and tested in isolation. Idempotent.
Rmi enforce_monotonic(Rmi rmi, std::span<const Key> sorted_sample);

// k-way comparison classifier: k-1 sorted splitters stored in implicit-heap
// order for a branch-free descent, plus optional dedicated buckets for keys
// equal to a heavy splitter. Bucket ids are order-preserving: every key in
// bucket i precedes (<=) every key in bucket i+1.
class SplitterTree {
public:
    // sorted_sample nondecreasing; bucket_budget a power of two >= 2. With
    // equality_mode, splitters covering more than 1/bucket_budget of the
    // sample get an equality bucket.
    static SplitterTree build(std::span<const Key> sorted_sample,
                              std::uint32_t bucket_budget, bool equality_mode);

    std::uint32_t classify(Key x) const {
        std::uint32_t i = 1;
        for (std::uint32_t lvl = 0; lvl < levels_; ++lvl)
            i = 2 * i + (x > tree_[i] ? 1u : 0u);
        std::uint32_t base = i - leaf_origin_;
        std::uint32_t eq = (base < splitters_.size()) &&
                           (equality_offset_[base + 1] - equality_offset_[base] > 1) &&
                           (x == splitters_[base]);
        return equality_offset_[base] + eq;
    }

    std::uint32_t bucket_count() const { return bucket_count_; }
    std::size_t splitter_count() const { return splitters_.size(); }
    const std::vector<Key>& splitters() const { return splitters_; }
    bool splitter_has_equality_bucket(std::size_t i) const {
        return equality_offset_[i + 1] - equality_offset_[i] > 1;
    }

private:
    std::vector<Key> tree_;             // implicit heap, 1-based, padded
    std::vector<Key> splitters_;        // strictly increasing
    std::vector<std::uint32_t> equality_offset_; // base region -> first bucket id
    std::uint32_t levels_ = 0;
    std::uint32_t leaf_origin_ = 0;
    std::uint32_t bucket_count_ = 0;
};

// 1 - distinct/len over a sorted sample; 0 for an empty sample.
double duplicate_fraction(std::span<const Key> sorted_sample);

// Tagged choice produced by the partition-model policy: either a trained RMI
// mapped onto bucket_count output buckets (optionally rescaled to a CDF
// sub-range when a parent model is forwarded to a child segment), or a
// splitter tree.
class PartitionModel {
public:
    struct Learned {
        Rmi rmi;
        std::uint32_t bucket_count;
        double cdf_lo = 0.0;
        double cdf_hi = 1.0;

        double inv_span() const {
            double s = cdf_hi - cdf_lo;
            return s > 0.0 ? 1.0 / s : 0.0;
        }
    };

    static PartitionModel learned(Rmi rmi, std::uint32_t bucket_count,
                                  double cdf_lo = 0.0, double cdf_hi = 1.0) {
        PartitionModel m;
        m.which_ = std::variant<Learned, SplitterTree>(
            Learned{std::move(rmi), bucket_count, cdf_lo, cdf_hi});
        return m;
    }

    static PartitionModel tree(SplitterTree t) {
        PartitionModel m;
        m.which_ = std::variant<Learned, SplitterTree>(std::move(t));
        return m;
    }

    bool is_learned() const { return which_.index() == 0; }
    const Learned& as_learned() const { return std::get<0>(which_); }
    const SplitterTree& as_tree() const { return std::get<1>(which_); }

    std::uint32_t bucket_count() const {
        return is_learned() ? as_learned().bucket_count : as_tree().bucket_count();
    }

    std::uint32_t bucket_index(Key x) const {
        if (is_learned()) {
            const Learned& l = as_learned();
            double f = l.rmi.predict(x);
            double u = (f - l.cdf_lo) * l.inv_span();
            double t = u * static_cast<double>(l.bucket_count);
            if (!(t > 0.0)) return 0;
            std::uint32_t i = static_cast<std::uint32_t>(t);
            return i >= l.bucket_count ? l.bucket_count - 1 : i;
        }
        return as_tree().classify(x);
    }

private:
    std::variant<Learned, SplitterTree> which_;
};

} // namespace lsort

#endif
