#pragma once

#include <gmpxx.h>

#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace mdyck {

// Multiplicity data (N_1, ..., N_{H+1}). Every entry is positive and the last
// one (the return-edge multiplicity) is at least 2. Height H = length - 1.
class HeightData {
 public:
  explicit HeightData(std::vector<long> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw InputError("height data must be nonempty");
    for (long n : counts_)
      if (n < 1) throw InputError("height data entries must be positive");
    if (counts_.back() < 2)
      throw InputError("last height data entry must be at least 2");
  }

  // Parses "1,2" style comma-separated counts.
  static HeightData parse(const std::string& text) {
    std::vector<long> counts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t pos = 0;
        long value = std::stol(item, &pos);
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) pos++;
        if (pos != item.size()) throw InputError("trailing junk in count: " + item);
        counts.push_back(value);
      } catch (const std::logic_error&) {
        throw InputError("cannot parse count: " + item);
      }
    }
    return HeightData(counts);
  }

  long height() const { return static_cast<long>(counts_.size()) - 1; }
  long levels() const { return static_cast<long>(counts_.size()); }

  // N_h with 1-based level index h in [1, H+1].
  long count(long h) const {
    check_internal(h >= 1 && h <= levels(), "level index out of range");
    return counts_[static_cast<std::size_t>(h - 1)];
  }

  const std::vector<long>& counts() const { return counts_; }

  long sum() const { return std::accumulate(counts_.begin(), counts_.end(), 0L); }

  mpz_class product() const {
    mpz_class p = 1;
    for (long n : counts_) p *= n;
    return p;
  }

  // v_h = N_1 * ... * N_h, with v_0 = 1.
  mpz_class cumulative(long h) const {
    check_internal(h >= 0 && h <= levels(), "cumulative index out of range");
    mpz_class v = 1;
    for (long i = 1; i <= h; i++) v *= count(i);
    return v;
  }

  HeightData repeat(long times) const {
    if (times < 1) throw InputError("repeat count must be positive");
    std::vector<long> counts;
    counts.reserve(counts_.size() * static_cast<std::size_t>(times));
    for (long l = 0; l < times; l++)
      counts.insert(counts.end(), counts_.begin(), counts_.end());
    return HeightData(std::move(counts));
  }

  bool operator==(const HeightData&) const = default;

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < counts_.size(); i++) {
      if (i) out += ",";
      out += std::to_string(counts_[i]);
    }
    return out + ")";
  }

 private:
  std::vector<long> counts_;
};

}  // namespace mdyck
