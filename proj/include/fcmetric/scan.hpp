#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <utility>
#include <vector>

namespace fcm {

/// How a sampled scan executes. Both policies visit exactly the same index
/// set and produce identical reports; the serial path is the reference the
/// OpenMP path is tested and benchmarked against.
enum class ExecutionPolicy { serial, parallel };

namespace detail {

/// First exception raised inside a parallel scan, keyed by sample index so
/// the rethrow matches what the serial reference would have thrown.
struct ScanErrorSlot {
    std::mutex mutex;
    std::int64_t index = -1;
    std::exception_ptr error;

    void capture(std::int64_t i, std::exception_ptr e) {
        std::lock_guard<std::mutex> lock(mutex);
        if (!error || i < index) {
            index = i;
            error = e;
        }
    }
};

} // namespace detail

/// Runs fn(i) for every i in [0, n). The parallel variant requires fn to be
/// safe for concurrent invocation; exceptions are re-thrown as the lowest
/// failing index, matching the serial order.
template <class Fn>
void for_each_index(std::int64_t n, ExecutionPolicy policy, Fn&& fn) {
    if (policy == ExecutionPolicy::serial) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    detail::ScanErrorSlot slot;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            fn(i);
        } catch (...) {
            slot.capture(i, std::current_exception());
        }
    }
    if (slot.error) std::rethrow_exception(slot.error);
}

/// Thread-safe collector for indexed scan results. take_sorted() restores the
/// serial order, so parallel runs report identically to the reference.
template <class T>
class IndexedSink {
public:
    void push(std::int64_t index, T value) {
        std::lock_guard<std::mutex> lock(mutex_);
        items_.emplace_back(index, std::move(value));
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return items_.size();
    }

    std::vector<std::pair<std::int64_t, T>> take_sorted() {
        std::lock_guard<std::mutex> lock(mutex_);
        std::sort(items_.begin(), items_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return std::move(items_);
    }

private:
    mutable std::mutex mutex_;
    std::vector<std::pair<std::int64_t, T>> items_;
};

} // namespace fcm
