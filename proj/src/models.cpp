#include "models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lsort {
namespace {

// Least squares over (x[i], y[i]) for i in [first, last). A degenerate x
// spread or a negative fitted slope collapses to the mean-value constant,
// which is the least-squares solution under the slope >= 0 constraint at 0.
LinearModel fit_line(const std::vector<double>& x, const std::vector<double>& y,
                     std::size_t first, std::size_t last) {
    std::size_t n = last - first;
    if (n == 0) return {0.0, 0.0};
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = first; i < last; ++i) {
        sx += x[i];
        sy += y[i];
    }
    double mx = sx / static_cast<double>(n);
    double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = first; i < last; ++i) {
        double dx = x[i] - mx;
        sxx += dx * dx;
        sxy += dx * (y[i] - my);
    }
    if (!(sxx > 0.0)) return {0.0, my};
    double slope = sxy / sxx;
    if (slope < 0.0) return {0.0, my};
    return {slope, my - slope * mx};
}

} // namespace

Rmi Rmi::train(std::span<const Key> sorted_sample, std::uint32_t submodels) {
    if (sorted_sample.size() < 2)
        throw std::invalid_argument("Rmi::train: sample must hold at least 2 keys");
    if (submodels == 0)
        throw std::invalid_argument("Rmi::train: submodel count must be positive");

    const std::size_t n = sorted_sample.size();
    Rmi r;
    r.key_base_ = static_cast<double>(sorted_sample.front());
    double key_max = static_cast<double>(sorted_sample.back());
    r.key_scale_ = key_max > r.key_base_ ? 1.0 / (key_max - r.key_base_) : 0.0;

    std::vector<double> xn(n), target(n);
    for (std::size_t i = 0; i < n; ++i) {
        xn[i] = r.normalize(sorted_sample[i]);
        target[i] = static_cast<double>(i) / static_cast<double>(n);
    }

    r.root_ = fit_line(xn, target, 0, n);
    r.sub_.assign(submodels, LinearModel{});
    r.clamp_lo_.assign(submodels, 0.0);
    r.clamp_hi_.assign(submodels, 1.0);

    // The root routes the sorted sample into contiguous slices; fit each
    // nonempty submodel on its slice.
    std::size_t begin = 0;
    for (std::size_t m = 0; m < submodels && begin < n; ++m) {
        std::size_t end = begin;
        while (end < n && r.route(xn[end]) == m) ++end;
        if (end > begin) r.sub_[m] = fit_line(xn, target, begin, end);
        begin = end;
    }

    return enforce_monotonic(std::move(r), sorted_sample);
}

Rmi enforce_monotonic(Rmi rmi, std::span<const Key> sorted_sample) {
    const std::size_t n = sorted_sample.size();
    const std::size_t b = rmi.sub_.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();

    std::vector<double> xn(n);
    for (std::size_t i = 0; i < n; ++i) xn[i] = rmi.normalize(sorted_sample[i]);

    if (rmi.root_.slope < 0.0) {
        double mid = n > 0 ? rmi.root_.eval(xn[n / 2]) : rmi.root_.intercept;
        rmi.root_ = {0.0, mid};
    }

    // Slice boundaries under the (now nondecreasing) root, then per-submodel
    // output bounds over the sample. With slope >= 0 the extremes sit at the
    // slice ends.
    std::vector<double> lo(b, -kInf), hi(b, kInf);
    std::vector<bool> nonempty(b, false);
    std::size_t begin = 0;
    for (std::size_t m = 0; m < b && begin < n; ++m) {
        std::size_t end = begin;
        while (end < n && rmi.route(xn[end]) == m) ++end;
        if (end > begin) {
            nonempty[m] = true;
            if (rmi.sub_[m].slope < 0.0)
                rmi.sub_[m] = {0.0, rmi.sub_[m].eval(xn[begin + (end - begin) / 2])};
            lo[m] = rmi.sub_[m].eval(xn[begin]);
            hi[m] = rmi.sub_[m].eval(xn[end - 1]);
        }
        begin = end;
    }

    // Nondecreasing bound sequence: running max on lows, running min on highs,
    // then cut each high at the next low so ranges never overlap across
    // submodels. Empty slices inherit neighbouring bounds.
    for (std::size_t m = 1; m < b; ++m) lo[m] = std::max(lo[m], lo[m - 1]);
    for (std::size_t m = b - 1; m-- > 0;) hi[m] = std::min(hi[m], hi[m + 1]);
    for (std::size_t m = 0; m + 1 < b; ++m) hi[m] = std::min(hi[m], lo[m + 1]);
    for (std::size_t m = 0; m < b; ++m) hi[m] = std::max(hi[m], lo[m]);

    for (std::size_t m = 0; m < b; ++m) {
        lo[m] = std::clamp(lo[m], 0.0, 1.0);
        hi[m] = std::clamp(hi[m], 0.0, 1.0);
    }
    lo.front() = 0.0;
    hi.back() = 1.0;

    // A submodel that saw no sample keys becomes the constant midpoint of its
    // (already consistent) bound range.
    for (std::size_t m = 0; m < b; ++m) {
        if (!nonempty[m]) rmi.sub_[m] = {0.0, 0.5 * (lo[m] + hi[m])};
    }

    rmi.clamp_lo_ = std::move(lo);
    rmi.clamp_hi_ = std::move(hi);
    return rmi;
}

SplitterTree SplitterTree::build(std::span<const Key> sorted_sample,
                                 std::uint32_t bucket_budget, bool equality_mode) {
    if (sorted_sample.empty())
        throw std::invalid_argument("SplitterTree::build: sample must not be empty");
    if (bucket_budget < 2 || (bucket_budget & (bucket_budget - 1)) != 0)
        throw std::invalid_argument("SplitterTree::build: bucket budget must be a power of two >= 2");

    const std::size_t n = sorted_sample.size();
    const std::size_t k = bucket_budget;

    SplitterTree t;
    // Equally spaced order statistics, collapsed to a strictly increasing set.
    for (std::size_t i = 0; i + 1 < k; ++i) {
        std::size_t pos = std::max<std::size_t>(1, (i + 1) * n / k) - 1;
        Key v = sorted_sample[pos];
        if (t.splitters_.empty() || v > t.splitters_.back()) t.splitters_.push_back(v);
    }
    if (t.splitters_.empty()) t.splitters_.push_back(sorted_sample.front());

    const std::size_t m = t.splitters_.size();

    // A splitter covering more than 1/k of the sample gets an equality bucket.
    t.equality_offset_.assign(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i) {
        auto [first, last] = std::equal_range(sorted_sample.begin(), sorted_sample.end(),
                                              t.splitters_[i]);
        std::size_t count = static_cast<std::size_t>(last - first);
        bool heavy = equality_mode && count * k > n;
        t.equality_offset_[i + 1] = t.equality_offset_[i] + (heavy ? 2 : 1);
    }
    t.bucket_count_ = t.equality_offset_[m] + 1;

    std::uint32_t levels = 1;
    while ((std::size_t{1} << levels) < m + 1) ++levels;
    t.levels_ = levels;
    t.leaf_origin_ = 1u << levels;

    std::vector<Key> padded(t.leaf_origin_ - 1, std::numeric_limits<Key>::max());
    std::copy(t.splitters_.begin(), t.splitters_.end(), padded.begin());

    t.tree_.assign(t.leaf_origin_, 0);
    // In-order placement of the sorted splitters into the implicit heap.
    std::size_t next = 0;
    auto fill = [&](auto&& self, std::size_t node) -> void {
        if (node >= t.tree_.size()) return;
        self(self, 2 * node);
        t.tree_[node] = padded[next++];
        self(self, 2 * node + 1);
    };
    fill(fill, 1);

    return t;
}

double duplicate_fraction(std::span<const Key> sorted_sample) {
    if (sorted_sample.empty()) return 0.0;
    std::size_t distinct = 1;
    for (std::size_t i = 1; i < sorted_sample.size(); ++i)
        distinct += sorted_sample[i] != sorted_sample[i - 1];
    return 1.0 - static_cast<double>(distinct) / static_cast<double>(sorted_sample.size());
}

} // namespace lsort
