#pragma once

// Command-line surface as a library function: run(args) executes one
// subcommand and returns the exit status with the captured streams, so the
// test suite can drive the CLI in-process and check byte-identical output.
// Exit codes: 0 success, 1 domain errors (machine-readable error JSON on
// stdout), 2 syntax/usage errors.

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "metabelian/arith.hpp"
#include "metabelian/commod.hpp"
#include "metabelian/errors.hpp"
#include "metabelian/evalhom.hpp"
#include "metabelian/fox.hpp"
#include "metabelian/group.hpp"
#include "metabelian/laurent.hpp"
#include "metabelian/sampling.hpp"
#include "metabelian/words.hpp"

namespace metabelian {
namespace cli {

using json = nlohmann::json;

struct RunResult {
  int status = 0;
  std::string out;
  std::string err;
};

namespace detail {

inline json coefficient_json(const Int &c) {
  if (c >= std::numeric_limits<long long>::min() && c <= std::numeric_limits<long long>::max())
    return json(c.convert_to<long long>());
  return json(c.str());
}

inline json poly_json(const LaurentPoly &p) {
  json terms = json::array();
  for (const auto &[m, c] : p.terms()) {
    json exps = json::array();
    for (int i = 1; i <= p.rank(); ++i) exps.push_back(m.exponent(i));
    terms.push_back(json::array({coefficient_json(c), exps}));
  }
  return terms;
}

inline json element_json(const Element &g) {
  json beta = json::object();
  for (const auto &[c, q] : g.part().beta())
    beta[std::to_string(c.i) + "," + std::to_string(c.j)] = poly_json(q);
  return json{{"rank", g.rank()},
              {"gamma", g.gamma()},
              {"beta", beta}};
}

inline std::vector<Int> parse_alpha(const std::string &text, int rank) {
  std::vector<Int> alphas;
  std::string cur;
  for (char ch : text + ",") {
    if (ch == ',') {
      if (cur.empty()) fail(Errc::bad_input, "empty entry in --alpha");
      alphas.emplace_back(cur);
      cur.clear();
    } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+') {
      cur += ch;
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      fail(Errc::bad_input, std::string("bad character in --alpha: ") + ch);
    }
  }
  if (static_cast<int>(alphas.size()) != rank)
    fail(Errc::bad_input, "--alpha needs exactly rank entries");
  return alphas;
}

inline Int parse_code(const std::string &text) {
  std::string digits = text;
  if (!text.empty() && text.front() == '{') {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.contains("code") || !j["code"].is_string())
      fail(Errc::bad_input, "expected a JSON envelope {\"code\": \"<digits>\"}");
    digits = j["code"].get<std::string>();
  }
  if (digits.empty()) fail(Errc::not_a_code, "empty code");
  for (char ch : digits)
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      fail(Errc::not_a_code, "code must be a decimal natural");
  return Int(digits);
}

inline std::string code_envelope(const Int &code) {
  json j{{"code", code.str()}, {"v", 1}};
  return j.dump();
}

struct Harness {
  std::ostringstream &out;
  bool all_ok = true;

  void report(const std::string &name, int passed, int total) {
    bool ok = passed == total;
    all_ok = all_ok && ok;
    out << (ok ? "ok   " : "FAIL ") << name << " " << passed << "/" << total << "\n";
  }
};

// The randomized identity harness behind check-axioms: exponential-group
// axioms, the delta-commutator identity, power residues, and agreement of
// the normal-form decider with the Fox oracle.
inline bool run_axiom_harness(std::ostringstream &out, int rank, std::uint64_t seed,
                              int samples, json *report) {
  Rng rng(seed);
  Harness h{out};

  int ok = 0;
  for (int s = 0; s < samples; ++s) {
    Element g = random_element(rng, rank, 6, 2);
    Element hh = random_element(rng, rank, 6, 2);
    long long a = rng.uniform(-6, 6), b = rng.uniform(-6, 6);
    if (check_exp_axioms(g, hh, a, b)) ++ok;
  }
  h.report("exp-axioms", ok, samples);

  ok = 0;
  for (int s = 0; s < samples; ++s) {
    Element x = evaluate_word(random_noncommutant_word(rng, rank, 4, 3));
    Element y = evaluate_word(random_noncommutant_word(rng, rank, 4, 3));
    if ((x.abelianization() * y.abelianization()).is_identity()) {
      ++ok; // degenerate pair, identity not applicable
      continue;
    }
    long long d = rng.uniform(-5, 5);
    if (delta_commutator_check(x, y, d)) ++ok;
  }
  h.report("delta-commutator", ok, samples);

  ok = 0;
  for (int s = 0; s < samples; ++s) {
    Element w = random_element(rng, rank, 6, 3);
    Element g = Element::from_part(random_part(rng, rank, 2, 2, 2, 3));
    long long m = rng.uniform(-8, 8);
    if (power_residue(w, g, m).in_commutant()) ++ok;
  }
  h.report("power-residue", ok, samples);

  ok = 0;
  for (int s = 0; s < samples; ++s) {
    GroupWord w1 = random_word(rng, rank, 10, 4);
    GroupWord w2 = rng.flip() ? random_word(rng, rank, 10, 4) : w1 * random_word(rng, rank, 2, 2);
    bool nf_eq = evaluate_word(w1) == evaluate_word(w2);
    bool fox_eq = magnus_equal(w1, w2);
    if (nf_eq == fox_eq) ++ok;
  }
  h.report("oracle-agreement", ok, samples);

  if (report) {
    (*report)["properties"] =
        json::array({"exp-axioms", "delta-commutator", "power-residue", "oracle-agreement"});
    (*report)["pass"] = h.all_ok;
  }
  return h.all_ok;
}

inline int corpus_run(std::ostringstream &out, const std::string &path, int rank) {
  std::ifstream in(path);
  if (!in) fail(Errc::bad_input, "cannot open corpus file: " + path);
  std::string line;
  int lineno = 0;
  bool disagreement = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = line;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
      trimmed.pop_back();
    std::size_t start = 0;
    while (start < trimmed.size() && std::isspace(static_cast<unsigned char>(trimmed[start])))
      ++start;
    trimmed = trimmed.substr(start);
    if (trimmed.empty()) continue;
    std::size_t sep = trimmed.find(';');
    if (sep == std::string::npos)
      fail(Errc::syntax_error, "line " + std::to_string(lineno) + ": missing ';' separator");
    GroupWord w1(rank), w2(rank);
    try {
      w1 = parse_word(trimmed.substr(0, sep), rank);
      w2 = parse_word(trimmed.substr(sep + 1), rank);
    } catch (const Error &e) {
      fail(Errc::syntax_error, "line " + std::to_string(lineno) + ": " + e.what());
    }
    bool nf_eq = evaluate_word(w1) == evaluate_word(w2);
    bool fox_eq = magnus_equal(w1, w2);
    out << lineno << ": nf=" << (nf_eq ? "equal" : "different")
        << " fox=" << (fox_eq ? "equal" : "different");
    if (nf_eq != fox_eq) {
      out << " DISAGREEMENT";
      disagreement = true;
    }
    out << "\n";
  }
  return disagreement ? 1 : 0;
}

} // namespace detail

inline RunResult run(const std::vector<std::string> &args) {
  std::ostringstream out, err;

  CLI::App app{"exact arithmetic in free metabelian groups"};
  app.require_subcommand(1);

  int rank = 0;
  std::uint64_t seed = 1;
  int samples = 100;
  bool want_json = false;
  std::string alpha_text;
  std::vector<std::string> positionals;
  std::vector<std::string> poly_args;
  long long int_arg = 0;
  int fox_index = 0;

  auto add_common = [&](CLI::App *cmd, int npos, bool needs_alpha = false,
                        bool needs_polys = false) {
    cmd->add_option("--rank", rank, "ambient rank n (>= 2)")->required();
    cmd->add_flag("--json", want_json, "emit JSON output");
    if (needs_alpha) cmd->add_option("--alpha", alpha_text, "comma-separated integer point");
    if (needs_polys) cmd->add_option("--poly", poly_args, "polynomial (repeatable)");
    if (npos > 0)
      cmd->add_option("args", positionals, "inputs")->expected(npos);
  };

  CLI::App *nf = app.add_subcommand("nf", "normal form of a word");
  add_common(nf, 1);
  CLI::App *eq = app.add_subcommand("eq", "structural equality of two words");
  add_common(eq, 2);
  CLI::App *mulc = app.add_subcommand("mul", "product of two elements");
  add_common(mulc, 2);
  CLI::App *invc = app.add_subcommand("inv", "inverse of an element");
  add_common(invc, 1);
  CLI::App *powc = app.add_subcommand("pow", "integer power of an element");
  add_common(powc, 1);
  powc->add_option("--exponent,-m", int_arg, "integer exponent")->required();
  CLI::App *commc = app.add_subcommand("comm", "commutator of two elements");
  add_common(commc, 2);
  CLI::App *foxc = app.add_subcommand("fox", "Fox derivatives of a word");
  add_common(foxc, 1);
  foxc->add_option("--index,-i", fox_index, "single derivative index");
  CLI::App *collectc = app.add_subcommand("collect", "collected form of a module expression");
  add_common(collectc, 1);
  CLI::App *recoverc = app.add_subcommand("recover", "collected form of a commutant word");
  add_common(recoverc, 1);
  CLI::App *expandc = app.add_subcommand("expand", "module expression as a plain word");
  add_common(expandc, 1);
  CLI::App *encodec = app.add_subcommand("encode", "integer code of an element or polynomial");
  add_common(encodec, 1, false, false);
  bool encode_poly_flag = false;
  encodec->add_flag("--poly-input", encode_poly_flag, "treat input as a polynomial");
  CLI::App *decodec = app.add_subcommand("decode", "decode an integer code");
  add_common(decodec, 1, false, false);
  bool decode_poly_flag = false;
  decodec->add_flag("--poly-input", decode_poly_flag, "decode as a polynomial");
  CLI::App *codedmulc = app.add_subcommand("coded-mul", "multiply two coded elements");
  add_common(codedmulc, 2);
  CLI::App *evalc = app.add_subcommand("eval", "evaluate a polynomial at a point");
  add_common(evalc, 1, true);
  CLI::App *discc = app.add_subcommand("discriminate", "separating point for polynomials");
  add_common(discc, 0, false, true);
  CLI::App *quotc = app.add_subcommand("quotient-eq",
                                       "congruence of module expressions at a point");
  add_common(quotc, 2, true);
  CLI::App *basisc = app.add_subcommand("basis-cert", "necessary basis conditions");
  add_common(basisc, 0);
  basisc->add_option("words", positionals, "rank-many words")->expected(-1);
  CLI::App *axiomsc = app.add_subcommand("check-axioms", "randomized identity harness");
  add_common(axiomsc, 0);
  axiomsc->add_option("--seed", seed, "PRNG seed");
  axiomsc->add_option("--samples", samples, "samples per property");
  CLI::App *corpusc = app.add_subcommand("corpus", "run a word-pair corpus file");
  add_common(corpusc, 1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    err << e.what() << "\n";
    return {2, out.str(), err.str()};
  }

  try {
    if (rank < 2) fail(Errc::bad_input, "--rank must be at least 2");

    auto emit_element = [&](const Element &g) {
      if (want_json) {
        json j{{"v", 1}, {"element", detail::element_json(g)}, {"text", print_element(g)}};
        out << j.dump() << "\n";
      } else {
        out << print_element(g) << "\n";
      }
    };

    if (*nf) {
      emit_element(parse_element(positionals.at(0), rank));
    } else if (*eq) {
      bool equal = evaluate_word(parse_word(positionals.at(0), rank)) ==
                   evaluate_word(parse_word(positionals.at(1), rank));
      if (want_json) out << json{{"v", 1}, {"equal", equal}}.dump() << "\n";
      else out << (equal ? "true" : "false") << "\n";
    } else if (*mulc) {
      emit_element(mul(parse_element(positionals.at(0), rank),
                       parse_element(positionals.at(1), rank)));
    } else if (*invc) {
      emit_element(inv(parse_element(positionals.at(0), rank)));
    } else if (*powc) {
      emit_element(pow(parse_element(positionals.at(0), rank), int_arg));
    } else if (*commc) {
      emit_element(commutator(parse_element(positionals.at(0), rank),
                              parse_element(positionals.at(1), rank)));
    } else if (*foxc) {
      GroupWord w = parse_word(positionals.at(0), rank);
      if (fox_index != 0) {
        LaurentPoly d = fox(w, fox_index);
        if (want_json) out << json{{"v", 1}, {"fox", print_poly(d)}}.dump() << "\n";
        else out << print_poly(d) << "\n";
      } else {
        FoxVector v = fox_all(w);
        if (want_json) {
          json arr = json::array();
          for (const LaurentPoly &p : v.entries) arr.push_back(print_poly(p));
          out << json{{"v", 1}, {"fox", arr}}.dump() << "\n";
        } else {
          for (int i = 1; i <= rank; ++i)
            out << "d" << i << " = " << print_poly(v.entries[static_cast<std::size_t>(i - 1)])
                << "\n";
        }
      }
    } else if (*collectc) {
      CollectedPart p = collect(parse_module_expr(positionals.at(0), rank));
      if (want_json) out << json{{"v", 1}, {"collected", print_part(p)}}.dump() << "\n";
      else out << print_part(p) << "\n";
    } else if (*recoverc) {
      CollectedPart p = recover_collected(parse_word(positionals.at(0), rank));
      if (want_json) out << json{{"v", 1}, {"collected", print_part(p)}}.dump() << "\n";
      else out << print_part(p) << "\n";
    } else if (*expandc) {
      GroupWord w = expand_module_expr(parse_module_expr(positionals.at(0), rank));
      if (want_json) out << json{{"v", 1}, {"word", print_word(w)}}.dump() << "\n";
      else out << print_word(w) << "\n";
    } else if (*encodec) {
      Int code = encode_poly_flag
                     ? arith::encode_poly(parse_poly(positionals.at(0), rank))
                     : arith::encode_element(parse_element(positionals.at(0), rank));
      out << detail::code_envelope(code) << "\n";
    } else if (*decodec) {
      Int code = detail::parse_code(positionals.at(0));
      if (decode_poly_flag) {
        LaurentPoly p = arith::decode_poly(code, rank);
        if (want_json) out << json{{"v", 1}, {"poly", print_poly(p)}}.dump() << "\n";
        else out << print_poly(p) << "\n";
      } else {
        emit_element(arith::decode_element(code, rank));
      }
    } else if (*codedmulc) {
      Int c1 = detail::parse_code(positionals.at(0));
      Int c2 = detail::parse_code(positionals.at(1));
      out << detail::code_envelope(arith::coded_mul(c1, c2, rank)) << "\n";
    } else if (*evalc) {
      if (alpha_text.empty()) fail(Errc::bad_input, "--alpha is required");
      Rat v = eval_at(parse_poly(positionals.at(0), rank),
                      detail::parse_alpha(alpha_text, rank));
      if (want_json) out << json{{"v", 1}, {"value", print_rational(v)}}.dump() << "\n";
      else out << print_rational(v) << "\n";
    } else if (*discc) {
      if (poly_args.empty()) fail(Errc::bad_input, "need at least one --poly");
      std::vector<LaurentPoly> ps;
      for (const std::string &s : poly_args) ps.push_back(parse_poly(s, rank));
      evalhom::EvalPoint point = evalhom::separating_point(ps);
      json alphas = json::array();
      for (const Int &a : point.alphas) alphas.push_back(a.str());
      json values = json::array();
      for (const LaurentPoly &p : ps) values.push_back(print_rational(eval_at(p, point.alphas)));
      if (want_json) {
        out << json{{"v", 1}, {"alpha", alphas}, {"values", values}}.dump() << "\n";
      } else {
        out << "alpha =";
        for (const Int &a : point.alphas) out << " " << a.str();
        out << "\nvalues =";
        for (const LaurentPoly &p : ps) out << " " << print_rational(eval_at(p, point.alphas));
        out << "\n";
      }
    } else if (*quotc) {
      if (alpha_text.empty()) fail(Errc::bad_input, "--alpha is required");
      evalhom::EvalPoint point(detail::parse_alpha(alpha_text, rank));
      CollectedPart u = collect(parse_module_expr(positionals.at(0), rank));
      CollectedPart v = collect(parse_module_expr(positionals.at(1), rank));
      bool congruent = evalhom::congruent_mod(u, v, point);
      if (want_json) out << json{{"v", 1}, {"congruent", congruent}}.dump() << "\n";
      else out << (congruent ? "true" : "false") << "\n";
    } else if (*basisc) {
      if (static_cast<int>(positionals.size()) != rank)
        fail(Errc::bad_input, "basis-cert needs exactly rank words");
      std::vector<GroupWord> z;
      for (const std::string &s : positionals) z.push_back(parse_word(s, rank));
      BasisCertificate cert = basis_certificate(z);
      if (want_json) out << json{{"v", 1}, {"certificate", to_string(cert)}}.dump() << "\n";
      else out << to_string(cert) << "\n";
    } else if (*axiomsc) {
      json report{{"v", 1}, {"rank", rank}, {"seed", seed}, {"samples", samples}};
      bool ok = detail::run_axiom_harness(out, rank, seed, samples,
                                          want_json ? &report : nullptr);
      if (want_json) {
        out.str("");
        out << report.dump() << "\n";
      }
      return {ok ? 0 : 1, out.str(), err.str()};
    } else if (*corpusc) {
      int status = detail::corpus_run(out, positionals.at(0), rank);
      return {status, out.str(), err.str()};
    }
    return {0, out.str(), err.str()};
  } catch (const Error &e) {
    json j{{"v", 1},
           {"error",
            json{{"kind", errc_name(e.kind())}, {"message", e.what()}}}};
    if (e.has_position()) j["error"]["position"] = e.position();
    out << j.dump() << "\n";
    err << e.what() << "\n";
    return {e.kind() == Errc::syntax_error ? 2 : 1, out.str(), err.str()};
  }
}

} // namespace cli
} // namespace metabelian
