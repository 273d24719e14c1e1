#pragma once

// Tropical Schottky decision and recovery for genus 4, the tropical Igusa
// locus, and an exhaustive check of the coset lemma behind it.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "schottky/characteristics.hpp"
#include "schottky/graphs.hpp"

namespace schottky {

enum class Verdict { jacobian, not_jacobian, undecided };
std::string to_string(Verdict v);

struct VarthetaCertificate {
  Label v = 0;
  Rational vartheta;      // signed sum of tropical theta constants
  Rational edge_scaled;   // 2^{3-g} * vartheta
};

struct TropDecision {
  Verdict verdict = Verdict::undecided;
  FVector f_vector;
  std::optional<int> matched_entry;           // catalog index when Jacobian
  std::vector<VarthetaCertificate> negative;  // every vartheta_v < 0
  bool theta_nonnegative = true;
  std::vector<std::string> diagnostics;
};

// Voronoi f-vector lookup in the catalog plus the vartheta sign test.
TropDecision decide_tropical(const QuadForm& q);

struct TropRecovery {
  const CatalogEntry* entry = nullptr;
  MetricGraph graph;  // catalog graph carrying the recovered lengths
  // For each catalog edge, the matroid label it came from.
  std::vector<Label> label_of_edge;
  // X with X^t Q X = B D B^t, and the lengths solved back from it.
  std::optional<IntMatrix> basis_change;
  std::optional<std::vector<Rational>> solved_lengths;
};

// Throws NotJacobianError on a negative vartheta and InconsistencyError when
// the theta matroid matches no catalog graph or the lengths fail to
// reproduce Q.
TropRecovery recover_tropical(const QuadForm& q, bool want_basis);

struct IgusaMembership {
  bool member = true;
  std::vector<VarthetaCertificate> negative;
};

IgusaMembership igusa_locus_member(const QuadForm& q);

// Three characteristics and generators of a subgroup N of (Z/2Z)^8.
struct IgusaChoice {
  std::array<Characteristic, 3> m;
  std::array<Characteristic, 3> n;

  // The eight elements of m[i] + N.
  std::array<Characteristic, 8> coset(std::size_t i) const;
  // The failed admissibility conditions, empty when admissible.
  std::vector<std::string> admissibility_failures() const;
};

// An IgusaChoice that passed every admissibility condition.
class AdmissibleChoice {
 public:
  // Throws ValidationError listing every failed condition.
  explicit AdmissibleChoice(IgusaChoice choice);

  const IgusaChoice& choice() const { return choice_; }
  // The nonzero vector orthogonal to N'.
  Label orthogonal_vector() const { return orthogonal_; }

 private:
  IgusaChoice choice_;
  Label orthogonal_ = 0;
};

// Rank of N' = { n' : n in N }.
std::size_t projected_rank(const IgusaChoice& c);

// The characteristics used for the classical modular form (N' has rank 2, so
// this choice is not admissible).
IgusaChoice classical_igusa_choice();
// The explicit admissible choice for v = 1000, 1100, 1110 or 1111 permuted
// onto the support of v.
AdmissibleChoice admissible_family_for(Label v);

struct TropicalIgusaValue {
  Rational value;
  std::array<Rational, 3> pi;
  std::vector<std::pair<int, int>> argmax_pairs;  // unordered, i <= j, 1-based
  bool breakpoint = false;
};

TropicalIgusaValue tropical_igusa_form(const QuadForm& q, const AdmissibleChoice& c);
TropicalIgusaValue tropical_igusa_form_unchecked(const QuadForm& q, const IgusaChoice& c);

struct LemmaReport {
  std::size_t subgroups_total = 0;
  std::size_t subgroups_examined = 0;
  std::size_t matching_subgroups = 0;  // with at least three all-even cosets
  std::size_t azygetic_triples = 0;    // unordered triples of distinct even cosets
  std::size_t property_two_cases = 0;  // ordered cases where the hypothesis of (2) holds
  std::vector<std::string> counterexamples;
  bool complete = false;
  std::string resume_token;  // empty when complete
};

// Exhaustive check over rank-3 subgroups of (Z/2Z)^8 in a fixed order.
// budget caps the number of subgroups examined in this call (0 = no cap);
// threads > 1 splits the range with a deterministic merge.
LemmaReport verify_azygetic_lemma(std::size_t budget = 0, const std::string& resume_token = "",
                                  unsigned threads = 1);

// Pairs (i, j), 1-based with i < j, whose cosets have equal projections
// (m_i + N)' = (m_j + N)'.
std::vector<std::pair<int, int>> equal_projection_pairs(const IgusaChoice& c);
bool in_projected_group(const IgusaChoice& c, Label u);
// Exchanges m' and m'' in every characteristic.
IgusaChoice swap_halves(const IgusaChoice& c);
// Describes the first violated coset property, empty when both hold.
std::string check_lemma_properties(const IgusaChoice& c);

}  // namespace schottky
