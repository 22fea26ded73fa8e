#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace harmony {

using VectorId = std::uint64_t;

inline constexpr float kInfinity = std::numeric_limits<float>::infinity();

enum class ErrorCode {
    empty_dataset,
    bad_param,
    dim_mismatch,
    bad_block,
    already_pruned,
    negative_partial,
    no_candidates,
    unknown_node,
    block_not_resident,
    deadlock,
    metric_mismatch,
    width_mismatch,
    io_error,
    missing_index,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::empty_dataset: return "EmptyDataset";
        case ErrorCode::bad_param: return "BadParam";
        case ErrorCode::dim_mismatch: return "DimMismatch";
        case ErrorCode::bad_block: return "BadBlock";
        case ErrorCode::already_pruned: return "AlreadyPruned";
        case ErrorCode::negative_partial: return "NegativePartial";
        case ErrorCode::no_candidates: return "NoCandidates";
        case ErrorCode::unknown_node: return "UnknownNode";
        case ErrorCode::block_not_resident: return "BlockNotResident";
        case ErrorCode::deadlock: return "Deadlock";
        case ErrorCode::metric_mismatch: return "MetricMismatch";
        case ErrorCode::width_mismatch: return "WidthMismatch";
        case ErrorCode::io_error: return "IoError";
        case ErrorCode::missing_index: return "MissingIndex";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

/// A single dense float vector. Rejects NaN/Inf components and zero length
/// at construction so downstream distance code never has to re-check.
class DenseVector {
public:
    explicit DenseVector(std::vector<float> values) : values_(std::move(values)) {
        if (values_.empty()) raise(ErrorCode::bad_param, "vector must have dim >= 1");
        for (float v : values_) {
            if (!std::isfinite(v)) raise(ErrorCode::bad_param, "vector contains NaN/Inf");
        }
    }

    std::size_t dim() const { return values_.size(); }
    std::span<const float> values() const { return values_; }
    float operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<float> values_;
};

/// Row-major batch of vectors with stable 64-bit ids.
struct VectorBatch {
    std::size_t count = 0;
    std::size_t dim = 0;
    std::vector<float> data;    // count * dim, row-major
    std::vector<VectorId> ids;  // length count, unique

    VectorBatch() = default;
    VectorBatch(std::size_t dim_) : dim(dim_) {}

    std::span<const float> row(std::size_t i) const {
        return std::span<const float>(data.data() + i * dim, dim);
    }
    std::span<float> row(std::size_t i) {
        return std::span<float>(data.data() + i * dim, dim);
    }

    void append(std::span<const float> values, VectorId id) {
        if (dim == 0) dim = values.size();
        if (values.size() != dim) raise(ErrorCode::dim_mismatch, "row width != batch dim");
        data.insert(data.end(), values.begin(), values.end());
        ids.push_back(id);
        ++count;
    }

    /// Position of an id, or npos. Linear; callers needing bulk lookups build their own map.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t find(VectorId id) const {
        auto it = std::find(ids.begin(), ids.end(), id);
        return it == ids.end() ? npos : static_cast<std::size_t>(it - ids.begin());
    }

    void validate() const {
        if (data.size() != count * dim) raise(ErrorCode::bad_param, "data length != count*dim");
        if (ids.size() != count) raise(ErrorCode::bad_param, "ids length != count");
        std::unordered_set<VectorId> seen(ids.begin(), ids.end());
        if (seen.size() != ids.size()) raise(ErrorCode::bad_param, "ids not unique");
        for (float v : data) {
            if (!std::isfinite(v)) raise(ErrorCode::bad_param, "batch contains NaN/Inf");
        }
    }
};

enum class Metric : std::uint8_t { l2_sq = 0, dot = 1 };

struct Neighbor {
    VectorId id = 0;
    float dist_sq = 0.0f;
};

/// Global result order: ascending distance, ties by ascending id. Keeping one
/// total order everywhere makes distributed and single-node output bit-comparable.
inline bool neighbor_less(const Neighbor& a, const Neighbor& b) {
    if (a.dist_sq != b.dist_sq) return a.dist_sq < b.dist_sq;
    return a.id < b.id;
}

inline bool operator==(const Neighbor& a, const Neighbor& b) {
    return a.id == b.id && a.dist_sq == b.dist_sq;
}

struct TopKResult {
    std::uint32_t k = 0;
    Metric metric = Metric::l2_sq;
    std::vector<Neighbor> entries;  // sorted by (dist_sq, id), length <= k
};

/// Bounded candidate set of the k best (dist_sq, id) pairs seen so far.
/// Duplicate ids keep their minimum distance. tau_sq() is the pruning
/// threshold: the current k-th best distance, or +Inf while under-full.
class TopKHeap {
public:
    explicit TopKHeap(std::uint32_t k) : k_(k) {
        if (k == 0) raise(ErrorCode::bad_param, "k must be >= 1");
        entries_.reserve(k);
    }

    /// Returns true if the candidate set changed.
    bool insert(VectorId id, float dist_sq) {
        for (auto& e : entries_) {
            if (e.id == id) {
                if (dist_sq < e.dist_sq) {
                    e.dist_sq = dist_sq;
                    std::sort(entries_.begin(), entries_.end(), neighbor_less);
                    return true;
                }
                return false;
            }
        }
        Neighbor cand{id, dist_sq};
        if (entries_.size() == k_ && !neighbor_less(cand, entries_.back())) return false;
        auto pos = std::upper_bound(entries_.begin(), entries_.end(), cand, neighbor_less);
        entries_.insert(pos, cand);
        if (entries_.size() > k_) entries_.pop_back();
        return true;
    }

    float tau_sq() const {
        return entries_.size() < k_ ? kInfinity : entries_.back().dist_sq;
    }

    std::uint32_t k() const { return k_; }
    std::size_t size() const { return entries_.size(); }
    const std::vector<Neighbor>& entries() const { return entries_; }

    TopKResult result(Metric metric = Metric::l2_sq) const {
        return TopKResult{k_, metric, entries_};
    }

private:
    std::uint32_t k_;
    std::vector<Neighbor> entries_;
};

}  // namespace harmony
