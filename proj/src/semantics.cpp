#include "hopt/semantics.hpp"

#include <random>
#include <unordered_map>
#include <utility>

#include "hopt/errors.hpp"

namespace hopt {

const char* mode_name(Mode mode) { return mode == Mode::Causal ? "causal" : "full"; }

Mode parse_mode(const std::string& text) {
  if (text == "causal") return Mode::Causal;
  if (text == "full") return Mode::Full;
  throw Error("unknown mode '" + text + "' (expected causal or full)");
}

Interpretation::Interpretation(Signature sig, Mode mode) : sig_(std::move(sig)), mode_(mode) {}

bool must_be_stochastic(const Generator& g, const Interpretation& interp) {
  return is_causal_first_order(g.dom, interp.sig()) && is_causal_first_order(g.cod, interp.sig());
}

void Interpretation::set_generator(const std::string& name, QMatrix m) {
  const Generator* g = sig_.find_generator(name);
  if (!g) throw AssignmentError("no generator named '" + name + "'");
  const std::size_t r = dim(g->cod);
  const std::size_t c = dim(g->dom);
  if (m.rows() != r || m.cols() != c)
    throw AssignmentError("generator '" + name + "' : " + g->dom.str() + " -> " + g->cod.str() +
                          " needs a " + std::to_string(r) + "x" + std::to_string(c) + " matrix, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  if (mode_ == Mode::Causal && must_be_stochastic(*g, *this) && !is_stochastic(m))
    throw AssignmentError("generator '" + name + "' must be stochastic in causal mode");
  gens_[name] = std::move(m);
}

bool Interpretation::has_generator(const std::string& name) const { return gens_.count(name) != 0; }

const QMatrix& Interpretation::generator(const std::string& name) const {
  auto it = gens_.find(name);
  if (it == gens_.end()) throw AssignmentError("generator '" + name + "' has no matrix");
  return it->second;
}

QMatrix Interpretation::discard(const Obj& obj) const {
  if (!is_causal_first_order(obj, sig_))
    throw TypeError("no designated discard on " + obj.str());
  const std::size_t n = dim(obj);
  return QMatrix::row(std::vector<Rational>(n, Rational(1)));
}

namespace canonical {

template <typename T>
Matrix<T> swap(std::size_t a, std::size_t b) {
  Matrix<T> m(a * b, a * b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) m(j * a + i, i * b + j) = ScalarTraits<T>::one();
  return m;
}

template <typename T>
Matrix<T> eps(std::size_t a, std::size_t b) {
  Matrix<T> m(b, a * b * a);
  for (std::size_t x = 0; x < a; ++x)
    for (std::size_t y = 0; y < b; ++y) m(y, (x * b + y) * a + x) = ScalarTraits<T>::one();
  return m;
}

template <typename T>
Matrix<T> seq(std::size_t a, std::size_t b, std::size_t c) {
  Matrix<T> m(a * c, b * c * a * b);
  for (std::size_t x = 0; x < a; ++x)
    for (std::size_t y = 0; y < b; ++y)
      for (std::size_t z = 0; z < c; ++z) m(x * c + z, (y * c + z) * (a * b) + (x * b + y)) = ScalarTraits<T>::one();
  return m;
}

template <typename T>
Matrix<T> par(std::size_t a, std::size_t a2, std::size_t b, std::size_t b2) {
  const std::size_t n = a * a2 * b * b2;
  Matrix<T> m(n, n);
  for (std::size_t x = 0; x < a; ++x)
    for (std::size_t x2 = 0; x2 < a2; ++x2)
      for (std::size_t y = 0; y < b; ++y)
        for (std::size_t y2 = 0; y2 < b2; ++y2)
          m((x * b + y) * (a2 * b2) + (x2 * b2 + y2), (x * a2 + x2) * (b * b2) + (y * b2 + y2)) =
              ScalarTraits<T>::one();
  return m;
}

template <typename T>
Matrix<T> delta(std::size_t c, std::size_t a, std::size_t b) {
  Matrix<T> m(a * b, c * a * b * c);
  for (std::size_t z = 0; z < c; ++z)
    for (std::size_t x = 0; x < a; ++x)
      for (std::size_t y = 0; y < b; ++y) m(x * b + y, ((z * a + x) * b + y) * c + z) = ScalarTraits<T>::one();
  return m;
}

template <typename T>
Matrix<T> hat_id(std::size_t a) {
  Matrix<T> m(a * a, 1);
  for (std::size_t x = 0; x < a; ++x) m(x * a + x, 0) = ScalarTraits<T>::one();
  return m;
}

#define HOPT_INSTANTIATE(T)                                                   \
  template Matrix<T> swap<T>(std::size_t, std::size_t);                       \
  template Matrix<T> eps<T>(std::size_t, std::size_t);                        \
  template Matrix<T> seq<T>(std::size_t, std::size_t, std::size_t);           \
  template Matrix<T> par<T>(std::size_t, std::size_t, std::size_t, std::size_t); \
  template Matrix<T> delta<T>(std::size_t, std::size_t, std::size_t);         \
  template Matrix<T> hat_id<T>(std::size_t);
HOPT_INSTANTIATE(Rational)
HOPT_INSTANTIATE(Boolean)
#undef HOPT_INSTANTIATE

}  // namespace canonical

template <typename T>
Matrix<T> static_vector(const Matrix<T>& f) {
  Matrix<T> v(f.rows() * f.cols(), 1);
  for (std::size_t b = 0; b < f.rows(); ++b)
    for (std::size_t a = 0; a < f.cols(); ++a) v(a * f.rows() + b, 0) = f(b, a);
  return v;
}
template Matrix<Rational> static_vector(const Matrix<Rational>&);
template Matrix<Boolean> static_vector(const Matrix<Boolean>&);

QMatrix process_of_static(const QMatrix& v, std::size_t dom_dim, std::size_t cod_dim) {
  if (v.cols() != 1 || v.rows() != dom_dim * cod_dim) throw EvalError("process_of_static: shape mismatch");
  QMatrix f(cod_dim, dom_dim);
  for (std::size_t b = 0; b < cod_dim; ++b)
    for (std::size_t a = 0; a < dom_dim; ++a) f(b, a) = v(a * cod_dim + b, 0);
  return f;
}

namespace {

Matrix<Rational> invert(const Matrix<Rational>& m) {
  auto inv = linalg::inverse(m);
  if (!inv) throw EvalError("inverse of a singular matrix");
  return *inv;
}

Matrix<Boolean> invert(const Matrix<Boolean>& m) {
  // over the boolean semiring only permutation matrices are invertible
  if (m.rows() != m.cols()) throw EvalError("inverse of a non-square matrix");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t row_count = 0;
    std::size_t col_count = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row_count += m(i, j).value;
      col_count += m(j, i).value;
    }
    if (row_count != 1 || col_count != 1) throw EvalError("boolean inverse of a non-permutation matrix");
  }
  return m.transpose();
}

Matrix<Rational> generator_matrix(const QMatrix& m, Rational*) { return m; }
Matrix<Boolean> generator_matrix(const QMatrix& m, Boolean*) { return support(m); }

template <typename T>
class Evaluator {
 public:
  explicit Evaluator(const Interpretation& interp) : interp_(interp) {}

  const Matrix<T>& operator()(const Term& t) {
    auto it = memo_.find(t.id_ptr());
    if (it != memo_.end()) return it->second;
    Matrix<T> m = compute(t);
    return memo_.emplace(t.id_ptr(), std::move(m)).first->second;
  }

 private:
  std::size_t d(const Obj& o) const { return interp_.dim(o); }

  Matrix<T> compute(const Term& t) {
    const auto& o = t.objs();
    switch (t.kind()) {
      case TermKind::Gen:
        return generator_matrix(interp_.generator(t.name()), static_cast<T*>(nullptr));
      case TermKind::Id:
      case TermKind::LUnit:
      case TermKind::LUnitInv:
      case TermKind::RUnit:
      case TermKind::RUnitInv:
      case TermKind::Eta:
        return Matrix<T>::identity(d(o[0]));
      case TermKind::Assoc:
      case TermKind::AssocInv:
        return Matrix<T>::identity(d(o[0]) * d(o[1]) * d(o[2]));
      case TermKind::Compose: {
        const Matrix<T>& f = (*this)(t.args()[1]);
        const Matrix<T>& g = (*this)(t.args()[0]);
        return g * f;
      }
      case TermKind::Tensor: {
        const Matrix<T>& f = (*this)(t.args()[0]);
        const Matrix<T>& g = (*this)(t.args()[1]);
        return kron(f, g);
      }
      case TermKind::Swap:
        return canonical::swap<T>(d(o[0]), d(o[1]));
      case TermKind::Eps:
        return canonical::eps<T>(d(o[0]), d(o[1]));
      case TermKind::SeqComp:
        return canonical::seq<T>(d(o[0]), d(o[1]), d(o[2]));
      case TermKind::ParComp:
        return canonical::par<T>(d(o[0]), d(o[1]), d(o[2]), d(o[3]));
      case TermKind::DeltaPartial:
        return canonical::delta<T>(d(o[0]), d(o[1]), d(o[2]));
      case TermKind::HatId:
        return canonical::hat_id<T>(d(o[0]));
      case TermKind::Discard: {
        Matrix<T> m(1, d(o[0]));
        for (auto& x : m.data()) x = ScalarTraits<T>::one();
        return m;
      }
      case TermKind::Static:
        return static_vector((*this)(t.args()[0]));
      case TermKind::Inverse:
        return invert((*this)(t.args()[0]));
    }
    throw EvalError("unknown term kind");
  }

  const Interpretation& interp_;
  std::unordered_map<const void*, Matrix<T>> memo_;
};

}  // namespace

QMatrix eval(const Term& term, const Interpretation& interp) {
  typecheck(term, interp.sig());
  Evaluator<Rational> ev(interp);
  return ev(term);
}

BMatrix eval_boolean(const Term& term, const Interpretation& interp) {
  typecheck(term, interp.sig());
  Evaluator<Boolean> ev(interp);
  return ev(term);
}

bool check_eq(const Term& t1, const Term& t2, const Interpretation& interp) {
  const TypedTerm a = typecheck(t1, interp.sig());
  const TypedTerm b = typecheck(t2, interp.sig());
  if (a.dom != b.dom || a.cod != b.cod)
    throw TypeError("check_eq: '" + t1.str() + "' : " + a.dom.str() + " -> " + a.cod.str() + " vs '" +
                    t2.str() + "' : " + b.dom.str() + " -> " + b.cod.str());
  return eval(t1, interp) == eval(t2, interp);
}

namespace {

QMatrix draw_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::uint32_t max_entry,
                    bool nonnegative, bool stochastic) {
  if (max_entry == 0) throw Error("max_entry must be positive");
  QMatrix m(rows, cols);
  for (auto& x : m.data()) {
    const std::uint64_t den = 1 + rng() % max_entry;
    std::int64_t num;
    if (nonnegative)
      num = static_cast<std::int64_t>(rng() % (static_cast<std::uint64_t>(max_entry) + 1));
    else
      num = static_cast<std::int64_t>(rng() % (2 * static_cast<std::uint64_t>(max_entry) + 1)) -
            static_cast<std::int64_t>(max_entry);
    x = Rational(static_cast<long>(num), static_cast<unsigned long>(den));
    x.canonicalize();
  }
  if (stochastic) {
    const auto sums = column_sums(m);
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(sums[j]) == 0) {
        if (rows > 0) m(0, j) = 1;
        continue;
      }
      for (std::size_t i = 0; i < rows; ++i) m(i, j) /= sums[j];
    }
  }
  return m;
}

}  // namespace

QMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, std::uint32_t max_entry,
                      bool nonnegative, bool stochastic) {
  std::mt19937_64 rng(seed);
  return draw_matrix(rng, rows, cols, max_entry, nonnegative || stochastic, stochastic);
}

Interpretation random_interpretation(const Signature& sig, std::uint64_t seed, std::uint32_t max_entry,
                                     Mode mode, const std::map<std::string, QMatrix>* fixed) {
  Interpretation interp(sig, mode);
  std::mt19937_64 rng(seed);
  for (const auto& g : sig.generators()) {
    const bool causal = mode == Mode::Causal;
    const bool stochastic = causal && must_be_stochastic(g, interp);
    QMatrix m = draw_matrix(rng, interp.dim(g.cod), interp.dim(g.dom), max_entry, causal, stochastic);
    if (fixed) {
      auto it = fixed->find(g.name);
      if (it != fixed->end()) m = it->second;
    }
    interp.set_generator(g.name, std::move(m));
  }
  return interp;
}

nlohmann::json matrix_to_json(const QMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& x : m.data())
    entries.push_back(nlohmann::json::array({x.get_num().get_str(), x.get_den().get_str()}));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

QMatrix matrix_from_json(const nlohmann::json& j) {
  const std::size_t rows = j.at("rows").get<std::size_t>();
  const std::size_t cols = j.at("cols").get<std::size_t>();
  const auto& entries = j.at("entries");
  if (entries.size() != rows * cols) throw Error("matrix JSON: entry count mismatch");
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    m.data()[i] = parse_rational(e.at(0).get<std::string>() + "/" + e.at(1).get<std::string>());
  }
  return m;
}

}  // namespace hopt
