#include "polyenum/dictionary.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "polyenum/errors.hpp"

namespace polyenum {

namespace {

std::shared_ptr<const Model> build_h_model(const Problem& p) {
  auto model = std::make_shared<Model>();
  model->input = Representation::H;
  model->d = p.dimension();
  model->m = p.m;
  const std::size_t n = p.n;

  std::vector<std::vector<Rational>> rows = p.rows;
  std::vector<std::vector<Rational>> back(model->d, std::vector<Rational>(n));
  for (std::size_t j = 0; j < model->d; ++j) back[j][j + 1] = 1;
  std::vector<bool> eliminated(n, false);

  auto substitute = [&](std::vector<Rational>& vec, const std::vector<Rational>& eq, std::size_t c) {
    if (vec[c].is_zero()) return;
    Rational factor = vec[c] / eq[c];
    for (std::size_t k = 0; k < n; ++k) {
      if (!eq[k].is_zero()) vec[k].sub_mul(factor, eq[k]);
    }
  };

  for (auto lin : p.linearity) {
    const std::size_t r = lin - 1;
    std::size_t c = 0;
    for (std::size_t k = 1; k < n; ++k) {
      if (!eliminated[k] && !rows[r][k].is_zero()) {
        c = k;
        break;
      }
    }
    if (c == 0) {
      if (!rows[r][0].is_zero()) {
        throw InconsistentLinearity("linearity row " + std::to_string(lin) + " is inconsistent");
      }
      throw RankDeficientLinearity("linearity row " + std::to_string(lin) +
                                   " depends on earlier equations");
    }
    const auto eq = rows[r];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r) substitute(rows[i], eq, c);
    }
    for (auto& b : back) substitute(b, eq, c);
    eliminated[c] = true;
  }

  std::vector<std::size_t> keep;  // surviving columns of the input matrix
  for (std::size_t k = 1; k < n; ++k) {
    if (!eliminated[k]) {
      keep.push_back(k);
      model->free_vars.push_back(k);
    }
  }
  auto compress = [&](const std::vector<Rational>& vec) {
    std::vector<Rational> out;
    out.reserve(keep.size() + 1);
    out.push_back(vec[0]);
    for (auto k : keep) out.push_back(vec[k]);
    return out;
  };
  for (std::size_t i = 0; i < p.m; ++i) {
    if (p.is_linearity(i + 1)) continue;
    model->slack_vars.push_back(model->d + i + 1);
    model->rows.push_back(compress(rows[i]));
  }
  for (const auto& b : back) model->back.push_back(compress(b));
  return model;
}

std::shared_ptr<const Model> build_v_model(const Problem& p) {
  if (!p.linearity.empty()) throw DomainError("linearity is not supported for V-representation input");
  auto model = std::make_shared<Model>();
  model->input = Representation::V;
  model->d = p.dimension();
  model->m = p.m;
  const std::size_t d = model->d;

  model->centroid.assign(d, Rational(0));
  for (const auto& row : p.rows) {
    if (row[0].is_zero()) throw DomainError("rays are not supported for V-representation input");
    for (std::size_t j = 0; j < d; ++j) model->centroid[j] += row[j + 1];
  }
  const Rational count(static_cast<long>(p.m));
  for (auto& c : model->centroid) c /= count;

  for (std::size_t j = 1; j <= d; ++j) model->free_vars.push_back(j);
  for (std::size_t i = 0; i < p.m; ++i) {
    std::vector<Rational> row(d + 1);
    row[0] = 1;
    for (std::size_t j = 0; j < d; ++j) row[j + 1] = p.rows[i][j + 1] - model->centroid[j];
    model->slack_vars.push_back(d + i + 1);
    model->rows.push_back(std::move(row));
  }
  model->back.assign(d, std::vector<Rational>(d + 1));
  for (std::size_t j = 0; j < d; ++j) model->back[j][j + 1] = 1;
  return model;
}

}  // namespace

std::shared_ptr<const Model> build_model(const Problem& p) {
  return p.rep == Representation::H ? build_h_model(p) : build_v_model(p);
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> Dictionary::row_of(VarIndex v) const {
  auto it = std::lower_bound(basis_.begin(), basis_.end(), v);
  if (it == basis_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - basis_.begin());
}

std::optional<std::size_t> Dictionary::col_of(VarIndex v) const {
  auto it = std::lower_bound(cobasis_.begin(), cobasis_.end(), v);
  if (it == cobasis_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - cobasis_.begin());
}

void Dictionary::pivot(VarIndex leaving, VarIndex entering) {
  auto row = row_of(leaving);
  auto col = col_of(entering);
  if (!row || !col) throw std::invalid_argument("pivot indices must be basic and cobasic");
  pivot_at(*row, *col);
}

void Dictionary::pivot_at(std::size_t p, std::size_t q) {
  const std::size_t qc = q + 1;
  const std::size_t width = cobasis_.size() + 1;
  auto& prow = tableau_[p];
  if (prow[qc].is_zero()) throw ZeroPivotElement("zero pivot element");

  const Rational inv = Rational(1) / prow[qc];
  for (std::size_t c = 0; c < width; ++c) {
    if (c == qc) {
      prow[c] = inv;
    } else if (!prow[c].is_zero()) {
      prow[c] = -(prow[c] * inv);
    }
  }
  auto eliminate = [&](std::vector<Rational>& row) {
    if (row[qc].is_zero()) return;
    const Rational f = row[qc];
    for (std::size_t c = 0; c < width; ++c) {
      if (c != qc && !prow[c].is_zero()) row[c].add_mul(f, prow[c]);
    }
    row[qc] = f * inv;
  };
  for (std::size_t i = 0; i < tableau_.size(); ++i) {
    if (i != p) eliminate(tableau_[i]);
  }
  eliminate(obj_);

  std::swap(basis_[p], cobasis_[q]);

  // Restore sorted order of rows and columns.
  std::size_t target_row = 0;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i != p && basis_[i] < basis_[p]) ++target_row;
  }
  if (target_row < p) {
    std::rotate(basis_.begin() + target_row, basis_.begin() + p, basis_.begin() + p + 1);
    std::rotate(tableau_.begin() + target_row, tableau_.begin() + p, tableau_.begin() + p + 1);
  } else if (target_row > p) {
    std::rotate(basis_.begin() + p, basis_.begin() + p + 1, basis_.begin() + target_row + 1);
    std::rotate(tableau_.begin() + p, tableau_.begin() + p + 1, tableau_.begin() + target_row + 1);
  }

  std::size_t target_col = 0;
  for (std::size_t k = 0; k < cobasis_.size(); ++k) {
    if (k != q && cobasis_[k] < cobasis_[q]) ++target_col;
  }
  auto move_col = [&](auto& seq, std::size_t offset) {
    auto first = seq.begin() + offset;
    if (target_col < q) {
      std::rotate(first + target_col, first + q, first + q + 1);
    } else if (target_col > q) {
      std::rotate(first + q, first + q + 1, first + target_col + 1);
    }
  };
  if (target_col != q) {
    move_col(cobasis_, 0);
    for (auto& row : tableau_) move_col(row, 1);
    move_col(obj_, 1);
  }
}

Rational Dictionary::perturbation(std::size_t row, VarIndex v) const {
  if (!model_->is_slack(v)) return Rational(0);
  if (basis_[row] == v) return Rational(1);
  if (auto col = col_of(v)) return -tableau_[row][*col + 1];
  return Rational(0);
}

bool Dictionary::is_ratio_row(std::size_t row) const {
  const VarIndex v = basis_[row];
  return model_->is_slack(v) || v == model_->artificial();
}

namespace {

constexpr std::size_t kNoColumn = static_cast<std::size_t>(-1);

// Sign of (va * tb - vb * ta).
int compare_cross(const Rational& va, const Rational& tb, const Rational& vb, const Rational& ta) {
  const int sa = va.sign() * tb.sign();
  const int sb = vb.sign() * ta.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  return Rational::compare_products(va, tb, vb, ta);
}

}  // namespace

// Lexicographic comparison of the perturbed values of rows a and b, each
// divided by the positive scale -T[.][col] (or 1 when col is kNoColumn).
//
// Components run over slack indices in increasing order. A basic slack has
// component 1 at its own index and 0 in every other row, so the first own
// index reached decides any remaining tie.
int Dictionary::compare_ratio(std::size_t a, std::size_t b, std::size_t col) const {
  static const Rational minus_one(-1);
  const auto& ra = tableau_[a];
  const auto& rb = tableau_[b];
  // With da = -ta and db = -tb: va/da < vb/db  <=>  va*tb > vb*ta.
  const Rational& ta = col == kNoColumn ? minus_one : ra[col + 1];
  const Rational& tb = col == kNoColumn ? minus_one : rb[col + 1];
  if (int c = compare_cross(ra[0], tb, rb[0], ta); c != 0) return -c;

  const VarIndex own_a = model_->is_slack(basis_[a]) ? basis_[a] : kNoColumn;
  const VarIndex own_b = model_->is_slack(basis_[b]) ? basis_[b] : kNoColumn;
  const VarIndex first_own = std::min(own_a, own_b);
  for (std::size_t k = 0; k < cobasis_.size(); ++k) {
    const VarIndex v = cobasis_[k];
    if (v > first_own) break;
    if (k == col || !model_->is_slack(v)) continue;
    // components -T[a][k]/da and -T[b][k]/db: compare T[a][k]*tb against T[b][k]*ta
    if (int c = compare_cross(ra[k + 1], tb, rb[k + 1], ta); c != 0) return c;
  }
  if (first_own == kNoColumn) return 0;
  return first_own == own_a ? 1 : -1;
}

int Dictionary::compare_value(std::size_t a, std::size_t b) const {
  return compare_ratio(a, b, kNoColumn);
}

bool Dictionary::is_row_lex_positive(std::size_t row) const {
  const auto& t = tableau_[row];
  if (t[0].sign() != 0) return t[0].sign() > 0;
  const VarIndex own = basis_[row];
  for (std::size_t k = 0; k < cobasis_.size(); ++k) {
    const VarIndex v = cobasis_[k];
    if (model_->is_slack(own) && v > own) break;
    if (!model_->is_slack(v)) continue;
    if (int s = t[k + 1].sign(); s != 0) return s < 0;
  }
  return model_->is_slack(own);
}

bool Dictionary::is_lex_feasible() const {
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    if (is_ratio_row(r) && !is_row_lex_positive(r)) return false;
  }
  return true;
}

std::optional<std::size_t> Dictionary::lex_ratio_row(std::size_t col) const {
  std::optional<std::size_t> best;
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    if (!is_ratio_row(r) || tableau_[r][col + 1].sign() >= 0) continue;
    if (!best) {
      best = r;
      continue;
    }
    int c = compare_ratio(r, *best, col);
    if (c == 0) throw std::logic_error("lexicographic ratio tie");
    if (c < 0) best = r;
  }
  return best;
}

std::optional<std::size_t> Dictionary::bland_column() const {
  for (std::size_t k = 0; k < cobasis_.size(); ++k) {
    if (obj_[k + 1].sign() < 0) return k;
  }
  return std::nullopt;
}

bool Dictionary::is_reverse_pivot(std::size_t row, std::size_t col) const {
  const Rational& cost = obj_[col + 1];
  if (cost.sign() <= 0) return false;
  const auto& prow = tableau_[row];
  const Rational ratio = cost / prow[col + 1];
  const VarIndex leaving = basis_[row];
  for (std::size_t k = 0; k < cobasis_.size() && cobasis_[k] < leaving; ++k) {
    if (k == col) continue;
    Rational reduced = obj_[k + 1];
    reduced.sub_mul(ratio, prow[k + 1]);
    if (reduced.sign() < 0) return false;
  }
  return true;
}

void Dictionary::add_column(VarIndex v, const std::vector<Rational>& column) {
  std::size_t pos = static_cast<std::size_t>(
      std::lower_bound(cobasis_.begin(), cobasis_.end(), v) - cobasis_.begin());
  cobasis_.insert(cobasis_.begin() + pos, v);
  for (std::size_t r = 0; r < tableau_.size(); ++r) {
    tableau_[r].insert(tableau_[r].begin() + pos + 1, column[r]);
  }
  obj_.insert(obj_.begin() + pos + 1, Rational(0));
}

void Dictionary::remove_column(std::size_t col) {
  cobasis_.erase(cobasis_.begin() + col);
  for (auto& row : tableau_) row.erase(row.begin() + col + 1);
  obj_.erase(obj_.begin() + col + 1);
}

// ---------------------------------------------------------------------------

Dictionary initial_dictionary(std::shared_ptr<const Model> model) {
  Dictionary dict;
  dict.basis_ = model->slack_vars;
  dict.cobasis_ = model->free_vars;
  dict.tableau_ = model->rows;
  dict.obj_.assign(dict.cobasis_.size() + 1, Rational(0));
  dict.model_ = std::move(model);
  return dict;
}

Dictionary initial_dictionary(const Problem& p) { return initial_dictionary(build_model(p)); }

Dictionary find_root(Dictionary dict) {
  const Model& model = *dict.model_;

  // Decision variables are free: pivot each into the basis and keep it there.
  for (auto v : model.free_vars) {
    auto col = dict.col_of(v);
    if (!col) continue;
    std::optional<std::size_t> row;
    for (std::size_t r = 0; r < dict.rows(); ++r) {
      if (model.is_slack(dict.basis_[r]) && !dict.tableau_[r][*col + 1].is_zero()) {
        row = r;
        break;
      }
    }
    if (!row) throw NotPointed("polyhedron contains a line; no vertices exist");
    dict.pivot_at(*row, *col);
  }

  if (!dict.is_lex_feasible()) {
    // Phase 1: add an artificial t >= 0 to every slack row and minimise it.
    const VarIndex t = model.artificial();
    std::vector<Rational> column(dict.rows());
    for (std::size_t r = 0; r < dict.rows(); ++r) {
      if (model.is_slack(dict.basis_[r])) column[r] = 1;
    }
    dict.add_column(t, column);

    std::optional<std::size_t> worst;
    for (std::size_t r = 0; r < dict.rows(); ++r) {
      if (!model.is_slack(dict.basis_[r])) continue;
      if (!worst || dict.compare_value(r, *worst) < 0) worst = r;
    }
    dict.pivot_at(*worst, *dict.col_of(t));

    while (auto t_row = dict.row_of(t)) {
      const auto& cost = dict.tableau_[*t_row];
      std::optional<std::size_t> entering;
      for (std::size_t k = 0; k < dict.cols(); ++k) {
        if (cost[k + 1].sign() < 0) {
          entering = k;
          break;
        }
      }
      if (!entering) throw Infeasible("polyhedron is empty");
      auto leaving = dict.lex_ratio_row(*entering);
      dict.pivot_at(*leaving, *entering);
    }
    dict.remove_column(*dict.col_of(t));
  }

  dict.obj_.assign(dict.cols() + 1, Rational(1));
  dict.obj_[0] = 0;
  dict.depth_ = 0;
  return dict;
}

Dictionary root_dictionary(const Problem& p) { return find_root(initial_dictionary(p)); }

Dictionary pivot(Dictionary dict, VarIndex leaving, VarIndex entering) {
  dict.pivot(leaving, entering);
  return dict;
}

std::optional<VarIndex> lex_ratio_test(const Dictionary& dict, VarIndex entering) {
  auto col = dict.col_of(entering);
  if (!col) throw std::invalid_argument("entering variable is not cobasic");
  auto row = dict.lex_ratio_row(*col);
  if (!row) return std::nullopt;
  return dict.basis()[*row];
}

LocalStep local_search(const Dictionary& dict) {
  auto col = dict.bland_column();
  if (!col) throw AtRoot("dictionary is the root");
  auto row = dict.lex_ratio_row(*col);
  if (!row) throw std::logic_error("objective unbounded below");
  const VarIndex leaving = dict.basis()[*row];
  LocalStep step{dict, 0};
  step.parent.pivot_at(*row, *col);
  if (dict.depth() > 0) step.parent.set_depth(dict.depth() - 1);
  step.j = *step.parent.col_of(leaving) + 1;
  return step;
}

std::optional<Dictionary> adjacency(const Dictionary& dict, std::size_t j) {
  if (j < 1 || j > dict.cols()) throw std::out_of_range("neighbour index out of range");
  auto row = dict.lex_ratio_row(j - 1);
  if (!row) return std::nullopt;
  Dictionary next = dict;
  next.pivot_at(*row, j - 1);
  next.set_depth(dict.depth() + 1);
  return next;
}

Dictionary restart_from(const Dictionary& root, const CobasisKey& key) {
  const Model& model = root.model();
  if (!key.well_formed()) throw InvalidCobasis("cobasis indices are not strictly increasing");
  if (key.indices.size() != root.cols()) throw InvalidCobasis("cobasis has the wrong size");
  for (auto v : key.indices) {
    if (!std::binary_search(model.slack_vars.begin(), model.slack_vars.end(), v)) {
      throw InvalidCobasis("index " + std::to_string(v) + " is not an inequality slack");
    }
  }
  Dictionary dict = root;
  for (auto target : key.indices) {
    if (dict.col_of(target)) continue;
    const std::size_t row = *dict.row_of(target);
    std::optional<std::size_t> col;
    for (std::size_t k = 0; k < dict.cols(); ++k) {
      if (!std::binary_search(key.indices.begin(), key.indices.end(), dict.cobasis()[k]) &&
          !dict.entry(row, k + 1).is_zero()) {
        col = k;
        break;
      }
    }
    if (!col) throw InvalidCobasis("cobasis " + key.to_string() + " is not a basis");
    dict.pivot_at(row, *col);
  }
  if (!dict.is_lex_feasible()) throw InvalidCobasis("cobasis " + key.to_string() + " is not lex-feasible");
  dict.set_depth(key.depth);
  return dict;
}

namespace {

std::vector<Rational> to_input_space(const Model& model, const std::vector<Rational>& y, bool affine) {
  std::vector<Rational> x;
  x.reserve(model.back.size());
  for (const auto& b : model.back) {
    Rational v = affine ? b[0] : Rational(0);
    for (std::size_t l = 0; l < y.size(); ++l) {
      if (!b[l + 1].is_zero() && !y[l].is_zero()) v.add_mul(b[l + 1], y[l]);
    }
    x.push_back(std::move(v));
  }
  return x;
}

}  // namespace

LexminResult lexmin_vertex(const Dictionary& dict) {
  const Model& model = dict.model();
  LexminResult out;
  std::vector<Rational> y;
  y.reserve(model.free_vars.size());
  for (auto v : model.free_vars) {
    auto row = dict.row_of(v);
    y.push_back(row ? dict.entry(*row, 0) : Rational(0));
  }
  out.coords = to_input_space(model, y, true);

  out.is_lexmin = true;
  for (std::size_t r = 0; r < dict.rows() && out.is_lexmin; ++r) {
    const VarIndex b = dict.basis()[r];
    if (!model.is_slack(b) || !dict.entry(r, 0).is_zero()) continue;
    for (std::size_t k = 0; k < dict.cols() && dict.cobasis()[k] < b; ++k) {
      if (!dict.entry(r, k + 1).is_zero()) {
        out.is_lexmin = false;
        break;
      }
    }
  }
  return out;
}

bool is_lexmin_ray(const Dictionary& dict, std::size_t col) {
  const Model& model = dict.model();
  auto is_min_ratio = [&](std::size_t r, std::size_t k) {
    for (std::size_t i = 0; i < dict.rows(); ++i) {
      if (i == r || !model.is_slack(dict.basis()[i]) || dict.entry(i, k + 1).sign() >= 0) continue;
      if (dict.entry(i, 0) * dict.entry(r, k + 1) > dict.entry(i, k + 1) * dict.entry(r, 0)) return false;
    }
    return true;
  };
  for (std::size_t r = 0; r < dict.rows(); ++r) {
    const VarIndex b = dict.basis()[r];
    if (!model.is_slack(b) || !dict.entry(r, col + 1).is_zero()) continue;
    for (std::size_t k = 0; k < dict.cols() && dict.cobasis()[k] < b; ++k) {
      if (k == col) continue;
      if (dict.entry(r, 0).is_zero()) {
        if (!dict.entry(r, k + 1).is_zero()) return false;
      } else if (dict.entry(r, k + 1).sign() < 0 && is_min_ratio(r, k)) {
        return false;
      }
    }
  }
  return true;
}

std::vector<Rational> primitive_integer(std::vector<Rational> v) {
  mpz_class lcm = 1;
  for (const auto& x : v) {
    if (!x.is_zero()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.den().raw().get_mpz_t());
  }
  mpz_class g = 0;
  for (auto& x : v) {
    x *= Rational(Integer(lcm));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.num().raw().get_mpz_t());
  }
  if (g == 0 || g == 1) return v;
  const Rational divisor{Integer(g)};
  for (auto& x : v) x /= divisor;
  return v;
}

std::vector<Rational> ray_direction(const Dictionary& dict, std::size_t col) {
  const Model& model = dict.model();
  std::vector<Rational> dy;
  dy.reserve(model.free_vars.size());
  for (auto v : model.free_vars) {
    auto row = dict.row_of(v);
    dy.push_back(row ? dict.entry(*row, col + 1) : Rational(dict.cobasis()[col] == v ? 1 : 0));
  }
  return primitive_integer(to_input_space(model, dy, false));
}

std::vector<Rational> facet_row(const Model& model, const std::vector<Rational>& a) {
  std::vector<Rational> row;
  row.reserve(a.size() + 1);
  Rational b = 1;
  for (std::size_t j = 0; j < a.size(); ++j) b.sub_mul(a[j], model.centroid[j]);
  row.push_back(std::move(b));
  row.insert(row.end(), a.begin(), a.end());
  return primitive_integer(std::move(row));
}

}  // namespace polyenum
