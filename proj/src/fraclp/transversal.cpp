#include "fhlab/fraclp/transversal.hpp"

#include <algorithm>
#include <map>

namespace fhlab::fraclp {

AtomPartition atomize(const SetFamily& family) {
  // membership pattern of each ground element, as the list of members containing it
  std::vector<std::vector<std::size_t>> pattern(family.ground_size());
  for (std::size_t i = 0; i < family.size(); ++i)
    for (Element e : family.member(i)) pattern[e].push_back(i);

  AtomPartition atoms;
  std::map<std::vector<std::size_t>, std::size_t> index_of;
  std::vector<std::size_t> atom_of(family.ground_size(), 0);
  for (std::size_t e = 0; e < pattern.size(); ++e) {
    if (pattern[e].empty()) continue;
    auto [it, inserted] = index_of.emplace(pattern[e], atoms.representative.size());
    if (inserted) {
      atoms.representative.push_back(static_cast<Element>(e));
      atoms.elements.emplace_back();
    }
    atoms.elements[it->second].push_back(static_cast<Element>(e));
    atom_of[e] = it->second;
  }
  atoms.member_atoms.resize(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto& list = atoms.member_atoms[i];
    for (Element e : family.member(i)) list.push_back(atom_of[e]);
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return atoms;
}

LpProblem intersection_lp(const SetFamily& family, const AtomPartition& atoms) {
  // variables: one probability per atom, then t
  const std::size_t a = atoms.representative.size();
  LpProblem lp;
  lp.sense = Sense::maximize;
  lp.objective.assign(a + 1, Rational(0));
  lp.objective[a] = 1;
  for (std::size_t i = 0; i < family.size(); ++i) {
    std::vector<Rational> row(a + 1);
    for (std::size_t atom : atoms.member_atoms[i]) row[atom] = 1;
    row[a] = -1;
    lp.matrix.push_back(std::move(row));
    lp.relations.push_back(Relation::greater_equal);
    lp.rhs.emplace_back(0);
  }
  std::vector<Rational> total(a + 1, Rational(1));
  total[a] = 0;
  lp.matrix.push_back(std::move(total));
  lp.relations.push_back(Relation::equal);
  lp.rhs.emplace_back(1);
  return lp;
}

LpProblem transversal_lp(const SetFamily& family, const AtomPartition& atoms) {
  const std::size_t a = atoms.representative.size();
  LpProblem lp;
  lp.sense = Sense::minimize;
  lp.objective.assign(a, Rational(1));
  for (std::size_t i = 0; i < family.size(); ++i) {
    std::vector<Rational> row(a);
    for (std::size_t atom : atoms.member_atoms[i]) row[atom] = 1;
    lp.matrix.push_back(std::move(row));
    lp.relations.push_back(Relation::greater_equal);
    lp.rhs.emplace_back(1);
  }
  return lp;
}

IntersectionNumber intersection_number(const SetFamily& family) {
  IntersectionNumber result;
  if (family.empty() || !family.empty_members().empty()) {
    result.degenerate = true;
    result.value = 0;
    return result;
  }
  const auto atoms = atomize(family);
  result.lp = solve_lp(intersection_lp(family, atoms));
  result.value = result.lp.value;
  for (std::size_t atom = 0; atom < atoms.representative.size(); ++atom)
    if (result.lp.primal[atom] != 0)
      result.distribution[atoms.representative[atom]] = result.lp.primal[atom];
  return result;
}

TransversalResult fractional_transversal(const SetFamily& family) {
  TransversalResult result;
  if (!family.empty_members().empty()) {
    result.feasible = false;
    return result;
  }
  if (family.empty()) return result;  // tau* = 0
  const auto atoms = atomize(family);
  result.lp = solve_lp(transversal_lp(family, atoms));
  result.tau_star = result.lp.value;
  for (std::size_t atom = 0; atom < atoms.representative.size(); ++atom)
    if (result.lp.primal[atom] != 0)
      result.weights[atoms.representative[atom]] = result.lp.primal[atom];
  return result;
}

namespace {

class HittingSetSearch {
 public:
  HittingSetSearch(const SetFamily& family, std::size_t cap)
      : atoms_(atomize(family)), hits_(family.size(), 0), best_size_(cap + 1) {
    members_of_atom_.resize(atoms_.representative.size());
    for (std::size_t i = 0; i < family.size(); ++i)
      for (std::size_t atom : atoms_.member_atoms[i]) members_of_atom_[atom].push_back(i);
  }

  std::optional<HittingSet> run() {
    search();
    if (!found_) return std::nullopt;
    HittingSet result;
    result.size = best_.size();
    for (std::size_t atom : best_) result.witness.push_back(atoms_.representative[atom]);
    std::sort(result.witness.begin(), result.witness.end());
    return result;
  }

 private:
  // Greedy packing of pairwise atom-disjoint unhit members: each needs its own pick.
  std::size_t packing_bound() const {
    std::vector<std::size_t> unhit;
    for (std::size_t i = 0; i < hits_.size(); ++i)
      if (hits_[i] == 0) unhit.push_back(i);
    std::stable_sort(unhit.begin(), unhit.end(), [&](std::size_t a, std::size_t b) {
      return atoms_.member_atoms[a].size() < atoms_.member_atoms[b].size();
    });
    std::vector<char> used(atoms_.representative.size(), 0);
    std::size_t count = 0;
    for (std::size_t i : unhit) {
      const auto& list = atoms_.member_atoms[i];
      if (std::any_of(list.begin(), list.end(), [&](std::size_t a) { return used[a]; }))
        continue;
      for (std::size_t a : list) used[a] = 1;
      ++count;
    }
    return count;
  }

  void search() {
    std::size_t target = hits_.size();
    for (std::size_t i = 0; i < hits_.size(); ++i) {
      if (hits_[i] != 0) continue;
      if (atoms_.member_atoms[i].empty()) return;  // unhittable
      if (target == hits_.size() ||
          atoms_.member_atoms[i].size() < atoms_.member_atoms[target].size())
        target = i;
    }
    if (target == hits_.size()) {
      if (chosen_.size() < best_size_) {
        best_size_ = chosen_.size();
        best_ = chosen_;
        found_ = true;
      }
      return;
    }
    if (chosen_.size() + packing_bound() >= best_size_) return;
    for (std::size_t atom : atoms_.member_atoms[target]) {
      chosen_.push_back(atom);
      for (std::size_t i : members_of_atom_[atom]) ++hits_[i];
      search();
      for (std::size_t i : members_of_atom_[atom]) --hits_[i];
      chosen_.pop_back();
    }
  }

  AtomPartition atoms_;
  std::vector<std::vector<std::size_t>> members_of_atom_;
  std::vector<std::size_t> hits_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_;
  std::size_t best_size_;
  bool found_ = false;
};

}  // namespace

std::optional<HittingSet> min_transversal_exact(const SetFamily& family, std::size_t cap) {
  return HittingSetSearch(family, cap).run();
}

}  // namespace fhlab::fraclp
