#pragma once

// Command implementations behind the dermat CLI. Each command writes a
// deterministic text report and returns the process exit code:
//   0  success / verified
//   1  a mathematical violation was found
//   2  input error (unreadable or ill-formed file, bad flag, shape mismatch)

#include "dermat/algebra.hpp"
#include "dermat/dercalc.hpp"
#include "dermat/io.hpp"
#include "dermat/matext.hpp"
#include "dermat/sampling.hpp"
#include "dermat/twolocal.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace dermat {

enum ExitCode : int { exit_ok = 0, exit_violation = 1, exit_input_error = 2 };

struct CommandOptions {
  std::string algebra_path;
  std::optional<std::string> module_path;  // regular bimodule when absent
  std::optional<std::size_t> n;
  bool jordan = false;
  std::optional<std::string> derivation_path;
  std::optional<std::string> oracle;
  std::size_t samples = default_samples;
  std::uint64_t seed = default_seed;
  bool unchecked = false;      // lemma22: skip Leibniz certification of the input
  bool complete_lift = false;  // twolocal: probe diagonals after S and T
};

namespace detail {

/// Input error detected by a command after parsing.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violation that ends a command with exit code 1.
class Violated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void print_vector(std::ostream& os, const Vector& v) {
  os << "(";
  for (std::size_t t = 0; t < v.size(); ++t) os << (t ? "," : "") << to_string(v[t]);
  os << ")";
}

inline void print_scalar_or_vector(std::ostream& os, const Vector& v) {
  if (v.size() == 1)
    os << to_string(v[0]);
  else
    print_vector(os, v);
}

/// n x n block matrix whose entries are base-module elements.
inline void print_blocks(std::ostream& os, std::size_t n, std::size_t base_dim, const Vector& x) {
  for (std::size_t i = 0; i < n; ++i) {
    os << "  [";
    for (std::size_t j = 0; j < n; ++j) {
      os << (j ? " " : "");
      print_scalar_or_vector(os, entry(n, base_dim, x, i, j));
    }
    os << "]\n";
  }
}

inline void print_matrix(std::ostream& os, const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << "  [";
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << to_string(m(r, c));
    os << "]\n";
  }
}

inline std::string one_based(const std::vector<std::size_t>& t) {
  std::ostringstream os;
  for (std::size_t k = 0; k < t.size(); ++k) os << (k ? "," : "") << t[k] + 1;
  return os.str();
}

struct LoadedPair {
  AlgebraPair base;
  std::optional<MatrixPair> matrix;

  [[nodiscard]] const Algebra& algebra() const { return matrix ? matrix->big_algebra() : base.algebra; }
  [[nodiscard]] const Bimodule& module() const { return matrix ? matrix->big_module() : base.module; }
};

inline void require_valid(std::ostream& out, const Algebra& a, const Bimodule& m) {
  const auto ra = validate_algebra(a);
  const auto rm = validate_bimodule(a, m);
  if (ra.ok() && rm.ok()) return;
  for (const auto& v : ra.violations) out << "algebra: " << v.describe() << "\n";
  for (const auto& v : rm.violations) out << "module: " << v.describe() << "\n";
  throw Violated("input pair fails validation");
}

inline LoadedPair load_pair(const CommandOptions& opts, std::ostream& out, bool need_n) {
  LoadedPair p;
  p.base.algebra = load_algebra(opts.algebra_path);
  p.base.module = opts.module_path ? load_bimodule(*opts.module_path, p.base.algebra.dim())
                                   : regular_bimodule(p.base.algebra);
  require_valid(out, p.base.algebra, p.base.module);
  if (need_n && !opts.n) throw InputError("-n SIZE is required");
  if (opts.n) {
    if (*opts.n < 2) throw InputError("-n must be at least 2");
    p.matrix = matrix_pair(p.base, *opts.n);
  }
  return p;
}

inline LinearMap load_map_for(const std::string& path, const Algebra& a, const Bimodule& m) {
  MapFile f = load_map(path);
  if (f.matrix.rows() != m.dim() || f.matrix.cols() != a.dim())
    throw InputError("map '" + path + "' is " + std::to_string(f.matrix.rows()) + "x" + std::to_string(f.matrix.cols()) +
                     ", expected " + std::to_string(m.dim()) + "x" + std::to_string(a.dim()));
  return LinearMap(std::move(f.matrix));
}

inline Derivation certify_for_command(std::ostream& out, const Algebra& a, const Bimodule& m, LinearMap f) {
  if (auto bad = leibniz_violation(a, m, f)) {
    out << "not a derivation: Leibniz rule fails at basis pair (" << a.labels()[bad->first] << ", "
        << a.labels()[bad->second] << ")\n";
    throw Violated("not a derivation");
  }
  return *Derivation::certify(a, m, std::move(f));
}

template <class Body>
int run_command(std::ostream& out, std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Violated& e) {
    err << "violation: " << e.what() << "\n";
    return exit_violation;
  } catch (const InvariantFailure& e) {
    out << "internal invariant failure: " << e.what() << "\n";
    err << "violation: " << e.what() << "\n";
    return exit_violation;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return exit_input_error;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return exit_input_error;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return exit_input_error;
  }
}

}  // namespace detail

inline int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  return detail::run_command(out, err, [&] {
    const Algebra a = load_algebra(path);
    const Bimodule m = regular_bimodule(a);
    const auto ra = validate_algebra(a);
    const auto rm = validate_bimodule(a, m);
    out << "algebra " << a.name() << " dim=" << a.dim() << "\n";
    for (const auto& v : ra.violations) out << "algebra: " << v.describe() << "\n";
    for (const auto& v : rm.violations) out << "regular module: " << v.describe() << "\n";
    const bool ok = ra.ok() && rm.ok();
    out << (ok ? "valid" : "invalid") << "\n";
    return ok ? exit_ok : exit_violation;
  });
}

inline int cmd_derspace(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return detail::run_command(out, err, [&] {
    const auto p = detail::load_pair(opts, out, false);
    const Algebra& a = p.algebra();
    const Bimodule& m = p.module();
    const DerivationSpace der = derivation_space(a, m);
    const InnerSpace inner = inner_space(a, m);
    const CohomologySummary s = summarize(der, inner);
    out << "pair " << a.name() << " -> " << m.name() << " (algebra dim " << a.dim() << ", module dim " << m.dim() << ")\n";
    out << "Der=" << s.der << " Inner=" << s.inner << " H1=" << s.h1 << "\n";
    for (std::size_t t = 0; t < der.dim(); ++t) {
      out << "derivation " << t + 1 << ":\n";
      detail::print_matrix(out, der.basis[t].map().matrix());
    }
    if (opts.jordan) {
      const JordanSpace jordan = jordan_derivation_space(a, m);
      out << "Jordan=" << jordan.dim() << " equal_to_Der=" << (jordan.as_subspace == der.as_subspace ? "yes" : "no")
          << "\n";
      for (std::size_t t = 0; t < jordan.dim(); ++t) {
        out << "jordan derivation " << t + 1 << ":\n";
        detail::print_matrix(out, jordan.basis[t].matrix());
      }
    }
    return exit_ok;
  });
}

inline int cmd_decompose(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return detail::run_command(out, err, [&] {
    if (!opts.derivation_path) throw detail::InputError("--derivation FILE is required");
    const auto p = detail::load_pair(opts, out, true);
    const MatrixPair& mp = *p.matrix;
    LinearMap f = detail::load_map_for(*opts.derivation_path, mp.big_algebra(), mp.big_module());
    const Derivation D = detail::certify_for_command(out, mp.big_algebra(), mp.big_module(), std::move(f));
    const Decomposition dec = decompose(mp, D);
    out << "B =\n";
    detail::print_blocks(out, mp.n(), mp.base_module().dim(), dec.B);
    out << "delta =\n";
    detail::print_matrix(out, dec.delta.map().matrix());
    out << "recomposition exact: yes\n";
    return exit_ok;
  });
}

inline int cmd_lemma22(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return detail::run_command(out, err, [&] {
    if (!opts.derivation_path) throw detail::InputError("--derivation FILE is required");
    const auto p = detail::load_pair(opts, out, true);
    const MatrixPair& mp = *p.matrix;
    LinearMap f = detail::load_map_for(*opts.derivation_path, mp.big_algebra(), mp.big_module());
    if (!opts.unchecked) detail::certify_for_command(out, mp.big_algebra(), mp.big_module(), f);
    const Lemma22Report report = verify_lemma22(mp, f);
    for (const auto& item : report.items) {
      out << item.name << ": " << (item.passed ? "pass" : "fail");
      if (!item.passed) out << " at " << item.tuple_names << "=" << detail::one_based(item.counterexample);
      out << " (" << item.checked << " checks)\n";
    }
    return report.all_passed() ? exit_ok : exit_violation;
  });
}

inline int cmd_twolocal(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return detail::run_command(out, err, [&] {
    if (!opts.oracle) throw detail::InputError("--oracle SPEC is required");
    const auto p = detail::load_pair(opts, out, true);
    const MatrixPair& mp = *p.matrix;
    const Algebra& A = mp.big_algebra();
    const Bimodule& M = mp.big_module();

    std::optional<TwoLocalOracle> oracle;
    const std::string& spec = *opts.oracle;
    if (spec.rfind("perturb:", 0) == 0) {
      const std::size_t colon = spec.find(':', 8);
      if (colon == std::string::npos) throw detail::InputError("oracle spec must be perturb:<kind>:<file>");
      const Perturbation kind = parse_perturbation(spec.substr(8, colon - 8));
      LinearMap f = detail::load_map_for(spec.substr(colon + 1), A, M);
      auto D = Derivation::certify(A, M, std::move(f));
      if (!D) throw detail::InputError("perturbation base map is not a derivation");
      oracle.emplace(perturbed_oracle(mp, *D, kind));
      out << "oracle: " << to_string(kind) << " perturbation of " << spec.substr(colon + 1) << "\n";
    } else {
      LinearMap f = detail::load_map_for(spec, A, M);
      if (auto D = Derivation::certify(A, M, f)) {
        oracle.emplace(wrap_derivation(*D));
        out << "oracle: derivation " << spec << "\n";
      } else {
        oracle.emplace(linear_oracle(std::move(f)));
        out << "oracle: linear map " << spec << " (not a derivation)\n";
      }
    }

    const DerivationSpace space = derivation_space(A, M);
    std::optional<Derivation> D;
    try {
      D = reconstruct(*oracle, space, mp.algebra, {opts.complete_lift});
    } catch (const NotTwoLocal& e) {
      out << "queries before verification: " << oracle->query_count() << "\n";
      out << "verdict: not 2-local: " << e.what() << "\n";
      return exit_violation;
    }
    out << "queries before verification: " << oracle->query_count() << "\n";
    out << "reconstructed derivation:\n";
    detail::print_matrix(out, D->map().matrix());
    if (opts.samples == 0) {
      out << "verdict: reconstructed, unverified\n";
      return exit_ok;
    }
    Sampler sampler(opts.seed);
    const auto points = sampler.vectors(A.dim(), opts.samples);
    const AgreementReport agreement = verify_agreement(*oracle, *D, points);
    out << "seed=" << opts.seed << " samples=" << agreement.checked << " agreeing=" << agreement.agreeing << "\n";
    if (agreement.all_agree()) {
      out << "verdict: agrees with the oracle on all samples\n";
      return exit_ok;
    }
    out << "first disagreeing point:\n";
    detail::print_blocks(out, mp.n(), mp.base_algebra().dim(), *agreement.first_disagreement);
    out << "verdict: disagreement\n";
    return exit_violation;
  });
}

/// Writes a catalog algebra as an algebra file.
inline int cmd_catalog(const std::string& name, std::ostream& out, std::ostream& err) {
  return detail::run_command(out, err, [&] {
    out << algebra_to_json(catalog(name).algebra).dump(2) << "\n";
    return exit_ok;
  });
}

}  // namespace dermat
