#include "wkrull/cli.hpp"

#include "wkrull/counterexample.hpp"
#include "wkrull/errors.hpp"
#include "wkrull/monoid.hpp"

#include <chrono>
#include <random>
#include <sstream>

namespace wkrull::cli {

using Json = nlohmann::ordered_json;

namespace {

// ------------------------------------------------------------- conversion

Json to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& c : v.coords()) a.push_back(to_json(c));
  return a;
}

Json to_json(const std::vector<IntVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

Json to_json(const std::vector<Integer>& zs) {
  Json a = Json::array();
  for (const auto& z : zs) a.push_back(to_json(z));
  return a;
}

template <class T>
Json optional_json(const std::optional<T>& x) {
  if (!x) return nullptr;
  if constexpr (std::is_same_v<T, std::int64_t> || std::is_same_v<T, std::size_t>)
    return *x;
  else
    return to_json(*x);
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["value"] = to_string(v.value);
  j["reason"] = v.reason;
  j["witness"] = to_json(v.witness);
  j["prime_face"] = optional_json(v.prime_face);
  j["failed_bound"] = optional_json(v.failed_bound);
  Json f = Json::array();
  for (const auto& fac : v.factorizations) f.push_back(to_json(fac));
  j["factorizations"] = f;
  return j;
}

std::string agreement(Tri decider, const OracleResult& o) {
  if (decider == Tri::Unsupported) return "decider_unsupported";
  return (decider == Tri::True) == o.weakly_krull ? "agree" : "contradiction";
}

Json oracle_json(const OracleResult& o) {
  Json j;
  j["weakly_krull"] = o.weakly_krull;
  j["bounded"] = o.bounded;
  j["box"] = o.box;
  j["witness"] = optional_json(o.witness);
  return j;
}

bool chain_holds(const PropertyReport& r) {
  auto implies = [](Tri a, Tri b) { return a != Tri::True || b == Tri::True; };
  return implies(r.normal_krull.value, r.generalized_krull.value) &&
         implies(r.generalized_krull.value, r.weakly_krull.value) &&
         implies(r.gcd_factorial.value, r.weakly_factorial.value) &&
         implies(r.weakly_factorial.value, r.weakly_krull.value);
}

Json tool_json() {
  Json j;
  j["name"] = kToolName;
  j["version"] = kToolVersion;
  return j;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// ------------------------------------------------------------ input parse

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Integer integer_field(const nlohmann::json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_number_unsigned()) return Integer(j.get<unsigned long>());
  throw ParseError(where + ": expected an integer");
}

} // namespace

MonoidInput parse_monoid_input(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed JSON at " + line_column(text, e.byte));
  }
  if (!j.is_object()) throw ParseError("input must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (key != "ambient_dim" && key != "generators" && key != "degree_bound")
      throw ParseError("unknown field \"" + key + "\"");
  if (!j.contains("ambient_dim")) throw ParseError("missing field \"ambient_dim\"");
  if (!j.contains("generators")) throw ParseError("missing field \"generators\"");

  MonoidInput in;
  const Integer d = integer_field(j["ambient_dim"], "ambient_dim");
  if (d < 1 || d > 1000) throw ParseError("ambient_dim: must be a positive dimension");
  in.ambient_dim = d.get_ui();
  const auto& gens = j["generators"];
  if (!gens.is_array() || gens.empty())
    throw ParseError("generators: expected a nonempty array of integer vectors");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string where = "generators[" + std::to_string(i) + "]";
    if (!gens[i].is_array()) throw ParseError(where + ": expected an array");
    if (gens[i].size() != in.ambient_dim)
      throw ParseError(where + ": length " + std::to_string(gens[i].size()) +
                       " differs from ambient_dim " + std::to_string(in.ambient_dim));
    IntVector v(in.ambient_dim);
    for (std::size_t k = 0; k < in.ambient_dim; ++k)
      v[k] = integer_field(gens[i][k], where + "[" + std::to_string(k) + "]");
    in.generators.push_back(std::move(v));
  }
  if (j.contains("degree_bound")) {
    const Integer b = integer_field(j["degree_bound"], "degree_bound");
    if (b < 0 || !b.fits_slong_p()) throw ParseError("degree_bound: must be a nonnegative integer");
    in.degree_bound = b.get_si();
  }
  return in;
}

// ---------------------------------------------------------------- analyze

Json analyze_report(const MonoidInput& in, const ReportOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = AffineMonoid::build(in.ambient_dim, in.generators);
  AnalysisOptions ao;
  ao.bounds.degree_bound = opts.degree_bound ? opts.degree_bound : in.degree_bound;
  const auto rep = analyze(s, ao);

  Json doc;
  doc["tool"] = tool_json();
  Json input;
  input["ambient_dim"] = in.ambient_dim;
  input["generators"] = to_json(in.generators);
  input["degree_bound"] = optional_json(in.degree_bound);
  doc["input"] = input;

  Json m;
  m["generators"] = to_json(s.generators());
  m["rank"] = s.rank();
  m["unit_rank"] = s.unit_rank();
  m["reduced_rank"] = s.reduced_rank();
  m["normal"] = s.is_normal();
  m["conductor"] = to_json(s.conductor());
  m["max_generator_degree"] = s.max_generator_degree();
  doc["monoid"] = m;

  Json props;
  props["normal_krull"] = verdict_json(rep.normal_krull);
  props["weakly_krull"] = verdict_json(rep.weakly_krull);
  props["generalized_krull"] = verdict_json(rep.generalized_krull);
  props["gcd_factorial"] = verdict_json(rep.gcd_factorial);
  props["weakly_factorial"] = verdict_json(rep.weakly_factorial);
  props["implication_chain_holds"] = chain_holds(rep);
  doc["properties"] = props;

  Json alg;
  alg["value"] = to_string(rep.weakly_krull.value);
  alg["note"] = "Q[S] is weakly Krull if and only if S is weakly Krull "
                "(field coefficients); the value is the monoid verdict";
  doc["algebra_weakly_krull"] = alg;

  doc["class_group"] = rep.class_group ? to_json(*rep.class_group) : Json(nullptr);

  Json spectrum = Json::array();
  Json monomial_type = Json::array();
  for (const auto& st : rep.spectrum) {
    Json row;
    row["face"] = st.prime.face_index;
    row["face_support"] = st.prime.face.support;
    row["face_dimension"] = st.prime.face.dimension;
    row["height"] = st.prime.height;
    row["ideal_generators"] = to_json(st.prime.ideal_generators);
    row["t_prime"] = to_string(st.t_prime);
    row["t_max"] = to_string(st.t_max);
    row["failed_bound"] = optional_json(st.failed_bound);
    row["colon_witness"] = optional_json(st.colon_witness);
    // K[P] is a height-one prime of Q[S] exactly when P has height one.
    row["provenance"] = st.prime.height == 1 ? "monomial" : "monomial_higher_height";
    if (st.prime.height == 1) monomial_type.push_back(st.prime.face_index);
    spectrum.push_back(row);
  }
  doc["spectrum"] = spectrum;

  Json h1;
  Json mono;
  mono["kind"] = "monomial";
  mono["description"] = "K[P] for P a height-one prime of S";
  mono["faces"] = monomial_type;
  Json contr;
  contr["kind"] = "contraction";
  contr["description"] = "Q intersected with Q[S] for Q a height-one prime of Q[q(S)]";
  contr["members"] = s.rank() > 0 ? "infinite" : "none";
  h1.push_back(mono);
  h1.push_back(contr);
  doc["algebra_height_one_spectrum"] = h1;

  Json cross;
  cross["decider"] = to_string(rep.weakly_krull.value);
  cross["oracle"] = oracle_json(rep.oracle);
  cross["agreement"] = agreement(rep.weakly_krull.value, rep.oracle);
  doc["oracle_cross_check"] = cross;

  Json bounds;
  bounds["degree_bound"] = optional_json(ao.bounds.degree_bound);
  bounds["oracle_box"] = rep.oracle.box;
  doc["bounds"] = bounds;
  doc["warnings"] = rep.warnings;
  if (opts.timing) doc["timing_ms"] = elapsed_ms(t0);
  return doc;
}

// --------------------------------------------------------- counterexample

SuiteReport counterexample_report(int n) {
  if (n < 1 || n > kMaxDepth)
    throw DepthExceeded("depth must lie in [1, " + std::to_string(kMaxDepth) + "]");
  using P = DyadicLaurentPoly;
  SuiteReport out;
  Json doc;
  doc["tool"] = tool_json();
  doc["depth"] = n;
  Json items = Json::array();
  bool all = true;

  const auto tel = telescoping_identity(n);

  // Item 1: y = X^(1/2^n) identifies K[G_n] with Q[y, 1/y], a PID; the
  // identification is multiplicative on the telescoping factors.
  {
    std::size_t checks = 0;
    bool ok = true;
    for (const auto& a : tel.factors)
      for (const auto& b : tel.factors) {
        const auto ia = to_univariate(a, n), ib = to_univariate(b, n);
        const auto iab = to_univariate(a * b, n);
        std::vector<Rational> prod(ia.coeffs.size() + ib.coeffs.size() - 1, Rational(0));
        for (std::size_t i = 0; i < ia.coeffs.size(); ++i)
          if (ia.coeffs[i] != 0)
            for (std::size_t k = 0; k < ib.coeffs.size(); ++k)
              prod[i + k] += ia.coeffs[i] * ib.coeffs[k];
        ok = ok && iab.shift == ia.shift + ib.shift && iab.coeffs == prod;
        ++checks;
      }
    Json it;
    it["item"] = 1;
    it["claim"] = "K[G_n] is a principal ideal domain";
    it["check"] = "X^(1/2^n) -> y identifies K[G_n] with Q[y, 1/y]; multiplicative on all factor pairs";
    it["checks"] = checks;
    it["passed"] = ok;
    all = all && ok;
    items.push_back(it);
  }

  // Item 2: 1 + X^(1/2^k) is prime in K[G_k].
  {
    bool ok = true;
    Json failed = Json::array();
    for (int k = 0; k <= n; ++k)
      if (!is_prime_in_gn(P::one_plus(k), k)) {
        ok = false;
        failed.push_back(k);
      }
    Json it;
    it["item"] = 2;
    it["claim"] = "1 + X^(1/2^k) is a prime element of K[G_k]";
    it["depths_checked"] = n + 1;
    it["failures"] = failed;
    it["passed"] = ok;
    all = all && ok;
    items.push_back(it);
  }

  // Item 3: 1 + X^(1/2^m) is not a multiple of 1 + X^(1/2^k) for m < k.
  {
    bool ok = true;
    std::size_t pairs = 0;
    Json failed = Json::array();
    for (int k = 1; k <= n; ++k)
      for (int m = 0; m < k; ++m) {
        ++pairs;
        if (divides_in_gn(P::one_plus(k), P::one_plus(m), k)) {
          ok = false;
          failed.push_back(Json::array({m, k}));
        }
      }
    Json it;
    it["item"] = 3;
    it["claim"] = "1 + X^(1/2^m) is not in (1 + X^(1/2^k)) K[G_k] for 0 <= m < k";
    it["pairs_checked"] = pairs;
    it["failures"] = failed;
    it["passed"] = ok;
    all = all && ok;
    items.push_back(it);
  }

  // Item 4: every a/b has the multiple b * (a/b) = a = (2^n a)(1/2^n) in G_n.
  {
    bool ok = true;
    std::size_t checked = 0;
    for (long b = 1; b <= 12; ++b)
      for (long a = -12; a <= 12; ++a) {
        const auto r = root_extension_check(a, b, n);
        Rational q(a, b);
        q.canonicalize();
        Integer scaled;
        mpz_mul_2exp(scaled.get_mpz_t(), r.value.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
        ok = ok && Rational(r.multiplier) * q == Rational(r.value) && scaled == r.coefficient;
        ++checked;
      }
    const auto sample = root_extension_check(5, 3, n);
    Json it;
    it["item"] = 4;
    it["claim"] = "G_n inside Q is a root extension";
    it["fractions_checked"] = checked;
    it["example"] = {{"fraction", "5/3"},
                     {"multiplier", to_json(sample.multiplier)},
                     {"value", to_json(sample.value)},
                     {"coefficient_of_generator", to_json(sample.coefficient)}};
    it["assumed"] = "integrality of K[G_n] in K[Q] for a root extension, hence t-dimension one "
                    "of K[Q]; cited, not computed";
    it["passed"] = ok;
    all = all && ok;
    items.push_back(it);
  }

  // Item 5: 1 - X splits into n + 1 pairwise coprime primes of K[G_n].
  {
    bool primes = true, coprime = true;
    std::size_t pairs = 0;
    Json factors = Json::array();
    for (const auto& f : tel.factors) {
      factors.push_back(f.str());
      primes = primes && is_prime_in_gn(f, n);
    }
    for (std::size_t i = 0; i < tel.factors.size(); ++i)
      for (std::size_t k = i + 1; k < tel.factors.size(); ++k) {
        ++pairs;
        coprime = coprime && coprime_in_gn(tel.factors[i], tel.factors[k], n);
      }
    Json it;
    it["item"] = 5;
    it["claim"] = "1 - X lies in at least n + 1 distinct height-one primes";
    it["factors"] = factors;
    it["product"] = tel.product.str();
    it["telescoping_identity_holds"] = tel.holds;
    it["factors_prime"] = primes;
    it["coprime_pairs_checked"] = pairs;
    it["pairwise_coprime"] = coprime;
    const bool ok = tel.holds && primes && coprime;
    it["passed"] = ok;
    all = all && ok;
    items.push_back(it);
  }

  doc["items"] = items;
  doc["passed"] = all;
  out.document = std::move(doc);
  out.passed = all;
  return out;
}

// ----------------------------------------------------------------- corpus

std::vector<MonoidInput> random_corpus(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 3), ngens(1, 6);
  std::uniform_int_distribution<long> entry(0, 5);
  std::vector<MonoidInput> out;
  while (out.size() < count) {
    MonoidInput in;
    in.ambient_dim = static_cast<std::size_t>(dim(rng));
    const int k = ngens(rng);
    bool nonzero = false;
    for (int i = 0; i < k; ++i) {
      IntVector v(in.ambient_dim);
      for (std::size_t j = 0; j < in.ambient_dim; ++j) v[j] = entry(rng);
      nonzero = nonzero || !v.is_zero();
      in.generators.push_back(std::move(v));
    }
    if (nonzero) out.push_back(std::move(in));
  }
  return out;
}

CorpusReport corpus_report(std::uint64_t seed, std::size_t count, const ReportOptions& opts) {
  if (count > kMaxCorpusCount)
    throw PreconditionViolated("corpus count exceeds " + std::to_string(kMaxCorpusCount));
  const auto t0 = std::chrono::steady_clock::now();
  const auto corpus = random_corpus(seed, count);

  const std::vector<std::string> decider_keys{"true", "false", "unsupported", "error"};
  const std::vector<std::string> oracle_keys{"true", "false", "none"};
  Json matrix;
  for (const auto& d : decider_keys)
    for (const auto& o : oracle_keys) matrix[d][o] = 0;

  Json instances = Json::array();
  Json inconclusive = Json::array();
  Json contradictions = Json::array();
  std::size_t definite = 0, agreeing = 0;
  CorpusReport out;

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto ti = std::chrono::steady_clock::now();
    const auto& in = corpus[i];
    Json e;
    e["index"] = i;
    e["ambient_dim"] = in.ambient_dim;
    e["generators"] = to_json(in.generators);
    std::string dkey = "error", okey = "none";
    try {
      const auto s = AffineMonoid::build(in.ambient_dim, in.generators);
      AnalysisOptions ao;
      ao.bounds.degree_bound = opts.degree_bound;
      const auto rep = analyze(s, ao);
      const auto rc = root_closure(s);
      const auto rcc = root_closure(rc);
      dkey = to_string(rep.weakly_krull.value);
      okey = rep.oracle.weakly_krull ? "true" : "false";
      e["status"] = "ok";
      e["normal"] = s.is_normal();
      e["weakly_krull"] = dkey;
      e["weakly_krull_reason"] = rep.weakly_krull.reason;
      e["oracle"] = oracle_json(rep.oracle);
      const auto agree = agreement(rep.weakly_krull.value, rep.oracle);
      e["agreement"] = agree;
      e["generalized_krull"] = to_string(rep.generalized_krull.value);
      e["gcd_factorial"] = to_string(rep.gcd_factorial.value);
      e["weakly_factorial"] = to_string(rep.weakly_factorial.value);
      e["class_group"] = rep.class_group ? to_json(*rep.class_group) : Json(nullptr);
      const bool chain = chain_holds(rep);
      e["implication_chain_holds"] = chain;
      e["root_closure_idempotent"] = rcc.generators() == rc.generators();
      e["root_closure_krull"] = is_krull(rc).value;
      if (agree == "agree") ++agreeing;
      if (rep.weakly_krull.value != Tri::Unsupported) ++definite;
      else inconclusive.push_back({{"index", i}, {"reason", rep.weakly_krull.reason}});
      if (agree == "contradiction" || !chain)
        contradictions.push_back({{"index", i},
                                  {"kind", agree == "contradiction" ? "decider_oracle"
                                                                    : "implication_chain"}});
    } catch (const BoundExceeded& ex) {
      e["status"] = "bound_exceeded";
      e["error"] = ex.what();
      inconclusive.push_back({{"index", i}, {"reason", ex.what()}});
    } catch (const Error& ex) {
      e["status"] = "error";
      e["error"] = ex.what();
      inconclusive.push_back({{"index", i}, {"reason", ex.what()}});
    }
    matrix[dkey][okey] = matrix[dkey][okey].get<std::size_t>() + 1;
    if (opts.timing) e["timing_ms"] = elapsed_ms(ti);
    instances.push_back(e);
  }

  Json doc;
  doc["tool"] = tool_json();
  doc["seed"] = seed;
  doc["count"] = count;
  doc["generator"] = "dimension 1..3, 1..6 generators, entries 0..5, mt19937_64";
  doc["degree_bound"] = optional_json(opts.degree_bound);
  Json summary;
  summary["instances"] = corpus.size();
  summary["definite_weakly_krull"] = definite;
  summary["definite_agreeing_with_oracle"] = agreeing;
  summary["agreement_matrix"] = matrix;
  summary["contradictions"] = contradictions;
  summary["inconclusive"] = inconclusive;
  doc["summary"] = summary;
  doc["instances"] = instances;
  if (opts.timing) doc["timing_ms"] = elapsed_ms(t0);
  out.contradictions = contradictions.size();
  out.document = std::move(doc);
  return out;
}

// ------------------------------------------------------------------ text

namespace {

bool is_scalar_array(const Json& j) {
  for (const auto& x : j)
    if (x.is_object() || (x.is_array() && !is_scalar_array(x))) return false;
  return true;
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar_text(j[i]);
    return s + "]";
  }
  return j.dump();
}

void render(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || (v.is_array() && !is_scalar_array(v))) {
        os << pad << k << ":\n";
        render(os, v, indent + 2);
      } else {
        os << pad << k << ": " << scalar_text(v) << "\n";
      }
    }
  } else if (j.is_array() && !is_scalar_array(j)) {
    for (const auto& v : j) {
      os << pad << "-\n";
      render(os, v, indent + 2);
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

} // namespace

std::string render_text(const Json& doc) {
  std::ostringstream os;
  render(os, doc, 0);
  return os.str();
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const DimensionMismatch*>(&e) ||
      dynamic_cast<const DepthExceeded*>(&e) || dynamic_cast<const PreconditionViolated*>(&e))
    return kExitParse;
  if (dynamic_cast<const UnsupportedDimension*>(&e) || dynamic_cast<const UnsupportedUnits*>(&e))
    return kExitUnsupportedDimension;
  if (dynamic_cast<const BoundExceeded*>(&e)) return kExitBoundExceeded;
  return kExitInternal;
}

} // namespace wkrull::cli
