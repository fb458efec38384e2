#include "prevcalc/polarity.hpp"

#include "prevcalc/errors.hpp"

#include <algorithm>

namespace prevcalc {

namespace {

using Family = std::uint64_t;

bool subset_of(Subset a, Subset b) { return (a & ~b) == 0; }

bool has(Family f, std::size_t i) { return ((f >> i) & 1u) != 0; }

// Families over the index set of `members` closed under supersets.
bool superset_closed(Family f, const std::vector<Subset>& members) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!has(f, i)) continue;
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (subset_of(members[i], members[j]) && !has(f, j)) return false;
    }
  }
  return true;
}

std::vector<Subset> unpack(Family f, const std::vector<Subset>& members) {
  std::vector<Subset> out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (has(f, i)) out.push_back(members[i]);
  }
  return out;
}

Family full(std::size_t k) { return k == 64 ? ~Family{0} : ((Family{1} << k) - 1); }

}  // namespace

FinitePoset::FinitePoset(std::size_t size, std::vector<std::vector<bool>> leq) : size_(size), leq_(std::move(leq)) {
  if (size_ == 0 || size_ > kMaxSize) {
    throw PreconditionError("poset size must lie in 1.." + std::to_string(kMaxSize));
  }
  if (leq_.size() != size_) throw PreconditionError("poset relation matrix has wrong size");
  for (const auto& row : leq_) {
    if (row.size() != size_) throw PreconditionError("poset relation matrix has wrong size");
  }
  for (std::size_t i = 0; i < size_; ++i) {
    if (!leq_[i][i]) throw PreconditionError("poset relation is not reflexive");
    for (std::size_t j = 0; j < size_; ++j) {
      if (i != j && leq_[i][j] && leq_[j][i]) throw PreconditionError("poset relation is not antisymmetric");
      for (std::size_t k = 0; k < size_; ++k) {
        if (leq_[i][j] && leq_[j][k] && !leq_[i][k]) throw PreconditionError("poset relation is not transitive");
      }
    }
  }
}

FinitePoset FinitePoset::from_pairs(std::size_t size, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  if (size == 0 || size > kMaxSize) throw PreconditionError("poset size must lie in 1.." + std::to_string(kMaxSize));
  std::vector<std::vector<bool>> r(size, std::vector<bool>(size, false));
  for (std::size_t i = 0; i < size; ++i) r[i][i] = true;
  for (const auto& [a, b] : pairs) {
    if (a >= size || b >= size) throw PreconditionError("poset pair refers to an element out of range");
    r[a][b] = true;
  }
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        if (r[i][k] && r[k][j]) r[i][j] = true;
      }
    }
  }
  return FinitePoset(size, std::move(r));
}

FinitePoset FinitePoset::antichain(std::size_t size) { return from_pairs(size, {}); }

FinitePoset FinitePoset::chain(std::size_t size) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i + 1 < size; ++i) pairs.emplace_back(i, i + 1);
  return from_pairs(size, pairs);
}

bool FinitePoset::is_up_set(Subset s) const {
  for (std::size_t i = 0; i < size_; ++i) {
    if (!((s >> i) & 1u)) continue;
    for (std::size_t j = 0; j < size_; ++j) {
      if (leq_[i][j] && !((s >> j) & 1u)) return false;
    }
  }
  return true;
}

bool FinitePoset::is_down_set(Subset s) const {
  for (std::size_t i = 0; i < size_; ++i) {
    if (!((s >> i) & 1u)) continue;
    for (std::size_t j = 0; j < size_; ++j) {
      if (leq_[j][i] && !((s >> j) & 1u)) return false;
    }
  }
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> FinitePoset::strict_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) {
      if (i != j && leq_[i][j]) out.emplace_back(i, j);
    }
  }
  return out;
}

SubsetFamily hyperspace(const FinitePoset& p, HyperFlavor flavor) {
  SubsetFamily out{{}, flavor};
  for (Subset s = 0; s <= p.carrier(); ++s) {
    if (flavor == HyperFlavor::Smyth ? p.is_up_set(s) : p.is_down_set(s)) out.members.push_back(s);
  }
  return out;
}

SubsetFamily apply_sigma_tau(const FinitePoset& p, PolarDirection dir, const SubsetFamily& fam) {
  const HyperFlavor in = dir == PolarDirection::Sigma ? HyperFlavor::Smyth : HyperFlavor::Hoare;
  const HyperFlavor out = dir == PolarDirection::Sigma ? HyperFlavor::Hoare : HyperFlavor::Smyth;
  if (fam.flavor != in) throw PreconditionError("apply_sigma_tau: family lives in the wrong hyperspace");
  for (Subset s : fam.members) {
    bool ok = s <= p.carrier() && (in == HyperFlavor::Smyth ? p.is_up_set(s) : p.is_down_set(s));
    if (!ok) throw PreconditionError("apply_sigma_tau: member " + format_subset(s, p.size()) + " is not in the hyperspace");
  }
  SubsetFamily result{{}, out};
  for (Subset c : hyperspace(p, out).members) {
    bool meets_all = std::all_of(fam.members.begin(), fam.members.end(), [&](Subset q) { return (q & c) != 0; });
    if (meets_all) result.members.push_back(c);
  }
  return result;
}

PolarityReport verify_polarity_images(const FinitePoset& p) {
  if (p.size() > 4) throw PreconditionError("verify_polarity_images: poset size must be <= 4");
  const std::vector<Subset> qe = hyperspace(p, HyperFlavor::Smyth).members;
  const std::vector<Subset> cf = hyperspace(p, HyperFlavor::Hoare).members;
  std::vector<Family> meets_c(qe.size(), 0);  // over cf, per Q
  std::vector<Family> meets_q(cf.size(), 0);  // over qe, per C
  for (std::size_t i = 0; i < qe.size(); ++i) {
    for (std::size_t j = 0; j < cf.size(); ++j) {
      if ((qe[i] & cf[j]) != 0) {
        meets_c[i] |= Family{1} << j;
        meets_q[j] |= Family{1} << i;
      }
    }
  }
  auto right = [&](Family a) {
    Family out = full(cf.size());
    for (std::size_t i = 0; i < qe.size(); ++i) {
      if (has(a, i)) out &= meets_c[i];
    }
    return out;
  };
  auto left = [&](Family b) {
    Family out = full(qe.size());
    for (std::size_t j = 0; j < cf.size(); ++j) {
      if (has(b, j)) out &= meets_q[j];
    }
    return out;
  };

  PolarityReport rep;
  auto fail = [&](const std::string& what, Family f, const std::vector<Subset>& members) {
    if (!rep.pass) return;
    rep.pass = false;
    rep.failure = what;
    rep.counterexample = unpack(f, members);
  };

  const Family nq = Family{1} << qe.size();
  const Family nc = Family{1} << cf.size();
  std::vector<bool> left_image(nq, false);
  std::vector<bool> right_image(nc, false);

  for (Family b = 0; b < nc; ++b) {
    ++rep.families_checked;
    Family lb = left(b);
    left_image[lb] = true;
    if (!superset_closed(lb, qe)) fail("(i) left orthogonal is not closed", b, cf);
    if ((b & ~right(lb)) != 0) fail("galois: B not below (perp B) perp", b, cf);
    if (left(right(lb)) != lb) fail("galois: triple orthogonal does not collapse", b, cf);
  }
  for (Family a = 0; a < nq; ++a) {
    ++rep.families_checked;
    Family ra = right(a);
    right_image[ra] = true;
    if (!superset_closed(ra, cf)) fail("(ii) right orthogonal is not compact saturated", a, qe);
    if ((a & ~left(ra)) != 0) fail("galois: A not below perp (A perp)", a, qe);
    if (right(left(ra)) != ra) fail("galois: triple orthogonal does not collapse", a, qe);
  }
  for (Family a = 0; a < nq; ++a) {
    bool closed = superset_closed(a, qe);
    if (closed && left(right(a)) != a) fail("(iii) tau(sigma(A)) != A on a closed family", a, qe);
    if (closed != left_image[a]) fail("(iv) image of the left orthogonal differs from the closed families", a, qe);
  }
  for (Family b = 0; b < nc; ++b) {
    bool sat = superset_closed(b, cf);
    if (sat && right(left(b)) != b) fail("(iii) sigma(tau(B)) != B on a compact saturated family", b, cf);
    if (sat != right_image[b]) fail("(iv) image of the right orthogonal differs from the saturated families", b, cf);
  }
  return rep;
}

std::vector<FinitePoset> all_posets(std::size_t size) {
  if (size == 0 || size > 4) throw PreconditionError("all_posets: size must lie in 1..4");
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (i != j) slots.emplace_back(i, j);
    }
  }
  std::vector<FinitePoset> out;
  for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    std::vector<std::vector<bool>> r(size, std::vector<bool>(size, false));
    for (std::size_t i = 0; i < size; ++i) r[i][i] = true;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if ((mask >> k) & 1u) r[slots[k].first][slots[k].second] = true;
    }
    try {
      out.emplace_back(size, std::move(r));
    } catch (const PreconditionError&) {
    }
  }
  return out;
}

std::string format_subset(Subset s, std::size_t size) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < size; ++i) {
    if (!((s >> i) & 1u)) continue;
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

}  // namespace prevcalc
