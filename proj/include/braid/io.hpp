#pragma once

// Text and JSON formats.
//
// Word format: header "n=<int>;" then whitespace-separated tokens: signed
// integers (-3 is the inverse of the third generator), "D" and "D^-1" for
// the half twist and its inverse.
//
// Canonical JSON: {"n":..,"inf":..,"factors":[[one-line perms, 1-based]..]}.
// Both formats round-trip bit-exactly.

#include <nlohmann/json.hpp>

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "braid/canonical.hpp"
#include "braid/conjugacy.hpp"
#include "braid/descent.hpp"
#include "braid/experiments.hpp"
#include "braid/summit.hpp"

namespace braid {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column)
      : std::runtime_error(message + " at line " + std::to_string(line) + ", column " +
                           std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

inline BraidWord parse_word(const std::string& text) {
  int line = 1, col = 1;
  size_t pos = 0;
  auto advance = [&](size_t count) {
    for (size_t i = 0; i < count; ++i, ++pos) {
      if (pos < text.size() && text[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) advance(1);
  };

  skip_ws();
  if (text.compare(pos, 2, "n=") != 0) throw ParseError("expected 'n=' header", line, col);
  advance(2);
  size_t end = pos;
  while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
  if (end == pos) throw ParseError("expected braid index", line, col);
  BraidWord w;
  w.n = std::stoi(text.substr(pos, end - pos));
  advance(end - pos);
  if (w.n < 2) throw ParseError("braid index must be >= 2", line, col);
  skip_ws();
  if (pos >= text.size() || text[pos] != ';') throw ParseError("expected ';' after header", line, col);
  advance(1);

  for (;;) {
    skip_ws();
    if (pos >= text.size()) break;
    const int tokLine = line, tokCol = col;
    size_t stop = pos;
    while (stop < text.size() && !std::isspace(static_cast<unsigned char>(text[stop]))) ++stop;
    const std::string tok = text.substr(pos, stop - pos);
    advance(stop - pos);
    if (tok == "D") {
      w.letters.push_back(BraidToken::half_twist(1));
    } else if (tok == "D^-1") {
      w.letters.push_back(BraidToken::half_twist(-1));
    } else {
      try {
        size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size() || v == 0) throw std::invalid_argument(tok);
        if (std::abs(v) > w.n - 1)
          throw ParseError("generator index out of range: " + tok, tokLine, tokCol);
        w.letters.push_back(BraidToken::generator(v));
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception&) {
        throw ParseError("bad token '" + tok + "'", tokLine, tokCol);
      }
    }
  }
  return w;
}

inline std::string render_word(const BraidWord& w) {
  std::string out = "n=" + std::to_string(w.n) + ";";
  for (const BraidToken& t : w.letters) {
    out += ' ';
    if (t.kind == BraidToken::Kind::HalfTwist)
      out += t.value > 0 ? "D" : "D^-1";
    else
      out += std::to_string(t.value);
  }
  return out;
}

inline Json to_json(const PermutationBraid& p) { return Json(p.one_line()); }

inline Json to_json(const CanonicalBraid& x) {
  Json j;
  j["n"] = x.n();
  j["inf"] = x.inf();
  Json factors = Json::array();
  for (const auto& f : x.factors()) factors.push_back(to_json(f));
  j["factors"] = std::move(factors);
  return j;
}

inline CanonicalBraid canonical_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  const long long u = j.at("inf").get<long long>();
  std::vector<PermutationBraid> fac;
  for (const auto& f : j.at("factors"))
    fac.push_back(PermutationBraid::from_one_line(f.get<std::vector<int>>()));
  CanonicalBraid x = CanonicalBraid::normalized(n, u, fac);
  return x;
}

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Conjugate: return "CONJUGATE";
    case Verdict::NotConjugate: return "NOT_CONJUGATE";
    case Verdict::NotConjugateFast: return "NOT_CONJUGATE_FAST";
    case Verdict::Unresolved: return "UNRESOLVED";
  }
  return "?";
}

inline const char* to_string(DecisionMode m) {
  switch (m) {
    case DecisionMode::Fast: return "fast";
    case DecisionMode::Exact: return "exact";
    case DecisionMode::Auto: return "auto";
  }
  return "?";
}

inline const char* to_string(InvariantSetKind k) {
  switch (k) {
    case InvariantSetKind::SSS: return "SSS";
    case InvariantSetKind::USS: return "USS";
    case InvariantSetKind::RSSS: return "RSSS";
  }
  return "?";
}

inline Json to_json(const ConjugacyCertificate& c) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["verdict"] = to_string(c.verdict);
  j["mode"] = c.used_exact ? "exact" : "fast";
  j["mode_requested"] = to_string(c.mode_requested);
  if (c.witness) {
    j["witness"] = render_word(c.witness->to_word());
    j["witness_verified"] = c.witness_verified;
  }
  if (c.separation) {
    j["separation"] = {{"inf_sup_x", {c.separation->inf_x, c.separation->sup_x}},
                       {"inf_sup_y", {c.separation->inf_y, c.separation->sup_y}}};
  }
  j["fast_valid"] = {c.fast_valid_x, c.fast_valid_y};
  if (c.budget_exhausted) {
    j["budget_exhausted"] = true;
    j["element_budget"] = c.element_budget;
  }
  j["elapsed_ms"] = c.elapsed_ms;
  return j;
}

inline Json to_json(const InvariantSetResult& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = to_string(r.kind);
  j["policy"] = r.policy == CandidatePolicy::Full ? "full" : "restricted";
  j["summit_inf"] = r.summit_inf;
  j["summit_sup"] = r.summit_sup;
  j["orbit_count"] = r.orbit_count();
  j["element_count"] = r.element_count();
  Json orbits = Json::array();
  for (const auto& orbit : r.orbits) {
    Json o = Json::array();
    for (const auto& e : orbit) o.push_back(to_json(e));
    orbits.push_back(std::move(o));
  }
  j["orbits"] = std::move(orbits);
  j["budget"] = {{"element_budget", r.element_budget}, {"exhausted", r.budget_exhausted}};
  return j;
}

inline Json to_json(const McResult& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["experiment"] = r.name;
  j["n"] = r.n;
  j["k"] = r.k;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["prng"] = "mt19937_64";
  j["successes"] = r.successes;
  j["evaluated"] = r.evaluated;
  j["conditioned_out"] = r.conditioned_out;
  j["rate"] = r.rate;
  j["std_error"] = r.std_error;
  j["ci_low"] = r.ci_low;
  j["ci_high"] = r.ci_high;
  j["bound"] = r.bound;
  j["bound_expr"] = r.bound_expr;
  j["cleared"] = r.cleared;
  return j;
}

inline std::string mc_csv_header() {
  return "n,k,value,provenance,samples,seed,ci_low,ci_high";
}

inline std::string to_csv_row(const McResult& r) {
  std::ostringstream os;
  os << r.n << ',' << r.k << ',' << r.rate << ",empirical:" << r.name << ',' << r.samples << ','
     << r.seed << ',' << r.ci_low << ',' << r.ci_high;
  return os.str();
}

inline Json to_json(const DescentTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row;
    row["n"] = r.n;
    row["k"] = r.k;
    row["value"] = format_sig3(r.value);
    row["provenance"] = r.provenance;
    if (r.samples) {
      row["samples"] = r.samples;
      row["seed"] = r.seed;
      row["ci_low"] = r.ci_low;
      row["ci_high"] = r.ci_high;
    }
    if (!r.annotation.empty()) row["annotation"] = r.annotation;
    rows.push_back(std::move(row));
  }
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["rows"] = std::move(rows);
  return j;
}

inline std::string to_csv(const DescentTable& t) {
  std::ostringstream os;
  os << mc_csv_header() << '\n';
  for (const auto& r : t.rows) {
    if (!r.annotation.empty()) os << "# (n=" << r.n << ",k=" << r.k << "): " << r.annotation << '\n';
    os << r.n << ',' << r.k << ',' << format_sig3(r.value) << ',' << r.provenance << ','
       << r.samples << ',' << r.seed << ',' << r.ci_low << ',' << r.ci_high << '\n';
  }
  return os.str();
}

inline Json to_json(const RuntimeProbeReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"k", row.k},
                    {"trials", row.trials},
                    {"seed", row.seed},
                    {"mean_ms", row.mean_ms},
                    {"max_ms", row.max_ms},
                    {"valid_fraction", row.valid_fraction}});
  }
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["prng"] = "mt19937_64";
  j["scaling"] = std::move(rows);
  return j;
}

}  // namespace braid
