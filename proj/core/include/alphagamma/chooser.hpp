#pragma once

#include "alphagamma/numeric.hpp"

#include <cstddef>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ag {

// Every random decision in the library goes through choose(): pick an index with
// probability proportional to a vector of nonnegative weights. A sampling
// chooser draws it; an enumerating chooser walks every branch exactly.
template <class R>
class Chooser {
 public:
  virtual ~Chooser() = default;
  virtual std::size_t choose(const std::vector<R>& weights) = 0;
};

using Rng = std::mt19937_64;

class RngChooser final : public Chooser<double> {
 public:
  explicit RngChooser(Rng& rng) : rng_(&rng) {}
  std::size_t choose(const std::vector<double>& weights) override {
    double total = 0;
    for (double w : weights) {
      if (w < 0) throw std::domain_error("negative weight");
      total += w;
    }
    if (!(total > 0)) throw std::domain_error("zero total weight");
    double u = std::uniform_real_distribution<double>(0.0, total)(*rng_);
    std::size_t last = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0) continue;
      last = i;
      if (u < weights[i]) return i;
      u -= weights[i];
    }
    return last;
  }
  Rng& rng() { return *rng_; }

 private:
  Rng* rng_;
};

// Depth-first walk over the decision tree of a deterministic-given-choices
// procedure. Each run replays a prefix of recorded choices and extends it with
// the first admissible option; next() advances to the following leaf.
class PathEnumerator final : public Chooser<Rational> {
 public:
  void begin_run() {
    pos_ = 0;
    prob_ = 1;
  }

  std::size_t choose(const std::vector<Rational>& weights) override {
    if (pos_ < trail_.size()) {
      Frame& f = trail_[pos_++];
      if (f.weights.size() != weights.size()) throw std::logic_error("non-deterministic replay");
      prob_ *= weights[f.idx] / f.total;
      return f.idx;
    }
    Rational total = 0;
    std::size_t first = weights.size();
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] < 0) throw std::domain_error("negative weight");
      if (weights[i] > 0 && first == weights.size()) first = i;
      total += weights[i];
    }
    if (total <= 0) throw std::domain_error("zero total weight");
    trail_.push_back({first, weights, total});
    ++pos_;
    prob_ *= weights[first] / total;
    return first;
  }

  const Rational& probability() const { return prob_; }

  bool next() {
    trail_.resize(pos_);
    while (!trail_.empty()) {
      Frame& f = trail_.back();
      for (std::size_t i = f.idx + 1; i < f.weights.size(); ++i) {
        if (f.weights[i] > 0) {
          f.idx = i;
          return true;
        }
      }
      trail_.pop_back();
    }
    return false;
  }

 private:
  struct Frame {
    std::size_t idx;
    std::vector<Rational> weights;
    Rational total;
  };
  std::vector<Frame> trail_;
  std::size_t pos_ = 0;
  Rational prob_ = 1;
};

// Calls sink(outcome, probability) once per complete decision path of run.
template <class Run, class Sink>
void enumerate_paths(Run&& run, Sink&& sink) {
  PathEnumerator e;
  do {
    e.begin_run();
    auto out = run(e);
    sink(std::move(out), e.probability());
  } while (e.next());
}

}  // namespace ag
