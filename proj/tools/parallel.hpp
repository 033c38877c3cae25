#pragma once

// Ordered batch-parallel map over a record stream. Output order equals
// input order for any job count; memory is bounded by one batch.

#include <algorithm>
#include <exception>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace dialsum::cli {

template <class In, class Out>
class OrderedMap {
 public:
  using Fn = std::function<Out(const In&)>;
  using Sink = std::function<void(Out&&)>;

  OrderedMap(size_t jobs, Fn fn, Sink sink, size_t batch = 1024)
      : jobs_(std::max<size_t>(1, jobs)), fn_(std::move(fn)), sink_(std::move(sink)), batch_(std::max<size_t>(1, batch)) {}

  void push(In item) {
    pending_.push_back(std::move(item));
    if (pending_.size() >= batch_) flush();
  }

  void flush() {
    if (pending_.empty()) return;
    std::vector<std::optional<Out>> results(pending_.size());
    std::vector<std::exception_ptr> errors(pending_.size());
    auto work = [&](size_t begin, size_t end) {
      for (size_t i = begin; i < end; ++i) {
        try {
          results[i].emplace(fn_(pending_[i]));
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    if (jobs_ == 1) {
      work(0, pending_.size());
    } else {
      std::vector<std::jthread> threads;
      const size_t chunk = (pending_.size() + jobs_ - 1) / jobs_;
      for (size_t b = 0; b < pending_.size(); b += chunk) {
        threads.emplace_back(work, b, std::min(pending_.size(), b + chunk));
      }
    }
    // First failure in input order wins, independent of scheduling.
    for (size_t i = 0; i < pending_.size(); ++i) {
      if (errors[i]) std::rethrow_exception(errors[i]);
      sink_(std::move(*results[i]));
    }
    pending_.clear();
  }

 private:
  size_t jobs_;
  Fn fn_;
  Sink sink_;
  size_t batch_;
  std::vector<In> pending_;
};

}  // namespace dialsum::cli
