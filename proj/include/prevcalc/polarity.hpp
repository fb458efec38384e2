#ifndef PREVCALC_POLARITY_HPP
#define PREVCALC_POLARITY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace prevcalc {

/// Subset of a poset carrier as a bitmask (bit i = element i).
using Subset = std::uint32_t;

/// Finite poset; as a space its opens are the up-sets.
class FinitePoset {
 public:
  static constexpr std::size_t kMaxSize = 5;

  /// Throws PreconditionError unless `leq` is a partial order on 1..5 points.
  FinitePoset(std::size_t size, std::vector<std::vector<bool>> leq);
  /// Reflexive-transitive closure of the listed pairs (i <= j).
  static FinitePoset from_pairs(std::size_t size, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);
  static FinitePoset antichain(std::size_t size);
  static FinitePoset chain(std::size_t size);

  std::size_t size() const { return size_; }
  bool leq(std::size_t i, std::size_t j) const { return leq_[i][j]; }
  Subset carrier() const { return static_cast<Subset>((1u << size_) - 1); }
  bool is_up_set(Subset s) const;
  bool is_down_set(Subset s) const;
  /// Strict order pairs (i < j).
  std::vector<std::pair<std::size_t, std::size_t>> strict_pairs() const;

 private:
  std::size_t size_;
  std::vector<std::vector<bool>> leq_;
};

enum class HyperFlavor { Smyth, Hoare };

/// Smyth members are up-sets, Hoare members down-sets; kept sorted.
struct SubsetFamily {
  std::vector<Subset> members;
  HyperFlavor flavor;
  friend bool operator==(const SubsetFamily&, const SubsetFamily&) = default;
};

/// All up-sets (Smyth) or down-sets (Hoare), including the empty set.
SubsetFamily hyperspace(const FinitePoset& p, HyperFlavor flavor);

enum class PolarDirection { Sigma, Tau };

/// Sigma: Smyth family -> {C closed : C meets every member}.
/// Tau: Hoare family -> {Q compact saturated : Q meets every member}.
SubsetFamily apply_sigma_tau(const FinitePoset& p, PolarDirection dir, const SubsetFamily& fam);

struct PolarityReport {
  bool pass = true;
  std::string failure;  // first failed item, empty on pass
  std::vector<Subset> counterexample;
  std::size_t families_checked = 0;
};

/// Exhaustive check of the hyperspace polarity image laws on a poset with
/// at most 4 points.
PolarityReport verify_polarity_images(const FinitePoset& p);

/// All labeled posets on `size` points (size <= 4).
std::vector<FinitePoset> all_posets(std::size_t size);

std::string format_subset(Subset s, std::size_t size);

}  // namespace prevcalc

#endif  // PREVCALC_POLARITY_HPP
