#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "polyenum/cobasis_key.hpp"
#include "polyenum/polyio.hpp"
#include "polyenum/rational.hpp"

namespace polyenum {

/// The inequality system a dictionary works on, after linearity elimination
/// (and, for V-input, after passing to the polar around the centroid).
///
/// Variable indices follow the input: decision variables 1..d, slack d+i for
/// row i. Eliminated decision variables and equation slacks are not live.
struct Model {
  Representation input = Representation::H;
  std::size_t d = 0;  // decision variables before elimination
  std::size_t m = 0;  // input rows
  std::vector<VarIndex> free_vars;   // surviving decision variables
  std::vector<VarIndex> slack_vars;  // slacks of the inequality rows
  // rows[i] = (b, coefficients over free_vars) for slack_vars[i].
  std::vector<std::vector<Rational>> rows;
  // back[j] = (c, coefficients over free_vars): x_{j+1} as an affine function.
  std::vector<std::vector<Rational>> back;
  std::vector<Rational> centroid;  // V-input only

  std::size_t dimension() const { return free_vars.size(); }

  /// Slacks carry the lexicographic perturbation eps^i; decision variables
  /// and the phase-1 artificial do not.
  bool is_slack(VarIndex v) const { return v > d && v <= d + m; }
  VarIndex artificial() const { return d + m + 1; }
};

/// Builds the Model: Gaussian elimination of the linearity rows for H-input,
/// polarity for V-input.
///
/// Throws InconsistentLinearity, RankDeficientLinearity, DomainError.
std::shared_ptr<const Model> build_model(const Problem& p);

/// A simplex dictionary
///
///   x_{B[r]} = T[r][0] + sum_k T[r][k+1] x_{N[k]}
///   z        = obj[0]  + sum_k obj[k+1]  x_{N[k]}
///
/// with B and N kept sorted. Because both orders are fixed and entries are
/// canonical rationals, the tableau is a function of the cobasis alone.
class Dictionary {
 public:
  Dictionary() = default;

  const Model& model() const { return *model_; }
  const std::shared_ptr<const Model>& model_ptr() const { return model_; }

  const std::vector<VarIndex>& basis() const { return basis_; }
  const std::vector<VarIndex>& cobasis() const { return cobasis_; }
  std::size_t rows() const { return basis_.size(); }
  std::size_t cols() const { return cobasis_.size(); }

  /// T[r][c]; c = 0 is the constant column.
  const Rational& entry(std::size_t r, std::size_t c) const { return tableau_[r][c]; }
  const Rational& objective(std::size_t c) const { return obj_[c]; }

  std::size_t depth() const { return depth_; }
  void set_depth(std::size_t depth) { depth_ = depth; }

  std::optional<std::size_t> row_of(VarIndex v) const;
  std::optional<std::size_t> col_of(VarIndex v) const;

  CobasisKey key() const { return {depth_, cobasis_}; }

  /// Exchanges basic `leaving` with cobasic `entering`.
  /// Throws ZeroPivotElement when their tableau coefficient is zero and
  /// std::invalid_argument when the indices are not basic/cobasic.
  void pivot(VarIndex leaving, VarIndex entering);
  void pivot_at(std::size_t row, std::size_t col);

  /// Every slack (and artificial) row has a lexicographically positive
  /// perturbed value.
  bool is_lex_feasible() const;
  bool is_row_lex_positive(std::size_t row) const;

  /// Lex-min ratio row for entering column `col`, or nullopt when no row
  /// limits the increase (a direction of recession).
  std::optional<std::size_t> lex_ratio_row(std::size_t col) const;

  /// Least-index cobasic column with negative reduced cost.
  std::optional<std::size_t> bland_column() const;

  bool is_root() const { return !bland_column().has_value(); }

  /// Would pivoting (row, col) reach a dictionary whose local-search step
  /// returns here? Decided from this tableau alone, without pivoting.
  bool is_reverse_pivot(std::size_t row, std::size_t col) const;

  friend bool operator==(const Dictionary& a, const Dictionary& b) {
    return a.basis_ == b.basis_ && a.cobasis_ == b.cobasis_ && a.tableau_ == b.tableau_ &&
           a.obj_ == b.obj_ && a.depth_ == b.depth_;
  }

  friend Dictionary initial_dictionary(const Problem& p);
  friend Dictionary initial_dictionary(std::shared_ptr<const Model> model);
  friend Dictionary find_root(Dictionary dict);

 private:
  // Perturbation coefficient of eps^v in the value of basic row `row`.
  Rational perturbation(std::size_t row, VarIndex v) const;
  int compare_ratio(std::size_t a, std::size_t b, std::size_t col) const;
  int compare_value(std::size_t a, std::size_t b) const;
  bool is_ratio_row(std::size_t row) const;
  void add_column(VarIndex v, const std::vector<Rational>& column);
  void remove_column(std::size_t col);

  std::shared_ptr<const Model> model_;
  std::vector<VarIndex> basis_;
  std::vector<VarIndex> cobasis_;
  std::vector<std::vector<Rational>> tableau_;
  std::vector<Rational> obj_;
  std::size_t depth_ = 0;
};

/// Slacks basic, surviving decision variables cobasic.
Dictionary initial_dictionary(const Problem& p);
Dictionary initial_dictionary(std::shared_ptr<const Model> model);

/// Pivots the decision variables into the basis, runs a lexicographic
/// phase 1 and installs the objective sum of cobasic slacks, making the
/// result the unique optimum. Throws Infeasible or NotPointed.
Dictionary find_root(Dictionary dict);

/// Convenience: find_root(initial_dictionary(p)).
Dictionary root_dictionary(const Problem& p);

Dictionary pivot(Dictionary dict, VarIndex leaving, VarIndex entering);

/// Leaving basic index for `entering`, or nullopt when unbounded.
std::optional<VarIndex> lex_ratio_test(const Dictionary& dict, VarIndex entering);

struct LocalStep {
  Dictionary parent;
  std::size_t j;  // 1-based: adjacency(parent, j) == the input dictionary
};

/// One Bland/lex simplex pivot toward the root. Throws AtRoot.
LocalStep local_search(const Dictionary& dict);

/// Neighbour through cobasic position j (1-based, ascending index order), or
/// nullopt when that direction is unbounded. Requires 1 <= j <= cols().
std::optional<Dictionary> adjacency(const Dictionary& dict, std::size_t j);

/// Pivots root to the dictionary with cobasis key.indices. Throws
/// InvalidCobasis when the key is malformed, not a basis, or not lex-feasible.
Dictionary restart_from(const Dictionary& root, const CobasisKey& key);

struct LexminResult {
  bool is_lexmin = false;
  std::vector<Rational> coords;
};

/// Basic solution in input coordinates, and whether this basis is the
/// lexicographically least one for its vertex.
LexminResult lexmin_vertex(const Dictionary& dict);

/// Whether the unbounded direction in column `col` should be printed from
/// this basis.
bool is_lexmin_ray(const Dictionary& dict, std::size_t col);

/// Direction of column `col` in input coordinates, scaled to a primitive
/// integer vector.
std::vector<Rational> ray_direction(const Dictionary& dict, std::size_t col);

/// For V-input: the facet (b, a) of the input polytope dual to this vertex of
/// the polar, scaled to a primitive integer vector.
std::vector<Rational> facet_row(const Model& model, const std::vector<Rational>& polar_vertex);

/// Scales a nonzero vector by a positive factor to coprime integers.
std::vector<Rational> primitive_integer(std::vector<Rational> v);

}  // namespace polyenum
