#pragma once

// Permutations of {1..N}, their cycle structure, and the conjugation that block-orders A = D + M_sigma.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "permsv/error.hpp"
#include "permsv/rng.hpp"

namespace permsv {

// A bijection of {1..N}, stored as its 1-based image list.
class Permutation {
 public:
  Permutation() = default;

  // Throws InvalidInput naming the first duplicated or out-of-range image.
  static Permutation from_images(std::vector<std::size_t> image) {
    const std::size_t n = image.size();
    std::vector<std::size_t> seen(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v = image[i];
      if (v < 1 || v > n) {
        throw InvalidInput("permutation image " + std::to_string(v) + " at position " +
                           std::to_string(i + 1) + " is outside 1.." + std::to_string(n));
      }
      if (seen[v] != 0) {
        throw InvalidInput("permutation is not a bijection: index " + std::to_string(v) +
                           " appears at positions " + std::to_string(seen[v]) + " and " +
                           std::to_string(i + 1));
      }
      seen[v] = i + 1;
    }
    Permutation p;
    p.image_ = std::move(image);
    return p;
  }

  static Permutation identity(std::size_t n) {
    Permutation p;
    p.image_.resize(n);
    std::iota(p.image_.begin(), p.image_.end(), std::size_t{1});
    return p;
  }

  // The single cycle 1 -> 2 -> ... -> n -> 1.
  static Permutation full_cycle(std::size_t n) {
    Permutation p;
    p.image_.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.image_[i] = (i + 1) % n + 1;
    return p;
  }

  std::size_t size() const { return image_.size(); }

  // sigma(i), 1-based.
  std::size_t operator()(std::size_t i) const { return image_[i - 1]; }

  std::span<const std::size_t> images() const { return image_; }

  Permutation inverse() const {
    Permutation q;
    q.image_.resize(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) q.image_[image_[i] - 1] = i + 1;
    return q;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> image_;
};

// Cycles of sigma, longest first; equal lengths ordered by smallest element. Each cycle is
// listed in orbit order starting from its smallest element n_i.
struct CycleDecomposition {
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<std::size_t> lengths;
  std::vector<std::size_t> starts;

  std::size_t count() const { return cycles.size(); }
  std::size_t total() const { return std::accumulate(lengths.begin(), lengths.end(), std::size_t{0}); }
};

inline CycleDecomposition decompose(const Permutation& sigma) {
  const std::size_t n = sigma.size();
  std::vector<std::vector<std::size_t>> found;
  std::vector<bool> visited(n + 1, false);
  for (std::size_t start = 1; start <= n; ++start) {
    if (visited[start]) continue;
    std::vector<std::size_t> orbit;
    for (std::size_t e = start; !visited[e]; e = sigma(e)) {
      visited[e] = true;
      orbit.push_back(e);
    }
    found.push_back(std::move(orbit));
  }
  // Orbits were discovered in increasing order of their smallest element.
  std::stable_sort(found.begin(), found.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  CycleDecomposition dec;
  for (auto& c : found) {
    dec.lengths.push_back(c.size());
    dec.starts.push_back(c.front());
    dec.cycles.push_back(std::move(c));
  }
  return dec;
}

// tau with sigma = tau o sigma_ordered o tau^{-1}, where sigma_ordered cycles through the
// consecutive blocks (1..N_1), (N_1+1..N_1+N_2), ... ; tau lists the cycles end to end.
inline Permutation ordering_permutation(const CycleDecomposition& dec) {
  std::vector<std::size_t> image;
  image.reserve(dec.total());
  for (const auto& c : dec.cycles) image.insert(image.end(), c.begin(), c.end());
  return Permutation::from_images(std::move(image));
}

// The block permutation sigma_ordered for the given cycle lengths.
inline Permutation ordered_permutation(std::span<const std::size_t> lengths) {
  std::vector<std::size_t> image;
  std::size_t offset = 0;
  for (std::size_t len : lengths) {
    for (std::size_t k = 0; k < len; ++k) image.push_back(offset + (k + 1) % len + 1);
    offset += len;
  }
  return Permutation::from_images(std::move(image));
}

// Uniform permutation by the back-to-front exchange shuffle. Consumes draws from rng only.
inline Permutation sample_uniform(std::size_t n, Stream& rng) {
  if (n == 0) throw InvalidInput("sample_uniform: n must be positive");
  std::vector<std::size_t> image(n);
  std::iota(image.begin(), image.end(), std::size_t{1});
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(image[i], image[j]);
  }
  return Permutation::from_images(std::move(image));
}

// L(k, sigma) = sum_i exp(-k N_i).
inline double l_functional(const CycleDecomposition& dec, double k) {
  if (!(k > 0.0)) throw InvalidInput("l_functional: k must be positive");
  double sum = 0.0;
  for (std::size_t len : dec.lengths) sum += std::exp(-k * static_cast<double>(len));
  return sum;
}

// (M_sigma x)_i = x_{sigma(i)}.
inline std::vector<std::complex<double>> apply(const Permutation& sigma,
                                               std::span<const std::complex<double>> x) {
  if (x.size() != sigma.size()) {
    throw InvalidInput("apply: vector length " + std::to_string(x.size()) +
                       " does not match permutation size " + std::to_string(sigma.size()));
  }
  std::vector<std::complex<double>> out(x.size());
  for (std::size_t i = 1; i <= x.size(); ++i) out[i - 1] = x[sigma(i) - 1];
  return out;
}

// One line of space-separated 1-based images.
inline std::string format_permutation(const Permutation& sigma) {
  std::string out;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(sigma.images()[i]);
  }
  return out;
}

inline Permutation parse_permutation(std::string_view text) {
  std::vector<std::size_t> image;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (ch < '0' || ch > '9') {
      throw InvalidInput("permutation parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": unexpected character '" + std::string(1, ch) + "'");
    }
    std::size_t value = 0;
    const std::size_t token_col = col;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      value = value * 10 + static_cast<std::size_t>(text[i] - '0');
      if (value > (std::size_t{1} << 40)) {
        throw InvalidInput("permutation parse error at line " + std::to_string(line) +
                           ", column " + std::to_string(token_col) + ": index too large");
      }
      ++i;
      ++col;
    }
    image.push_back(value);
  }
  if (image.empty()) throw InvalidInput("permutation parse error: empty input");
  return Permutation::from_images(std::move(image));
}

}  // namespace permsv
