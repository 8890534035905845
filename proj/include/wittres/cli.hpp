#pragma once

// Command driver. run_command is the whole program: the binary in tools/
// only forwards argv, so tests can call commands in process and compare
// reports byte for byte.
//
// Exit codes: 0 success, 1 usage errors, 2 parse and domain errors.

#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wittres/brieskorn.hpp"
#include "wittres/parser.hpp"
#include "wittres/report.hpp"
#include "wittres/wittlift.hpp"

namespace wittres {

namespace cli_detail {

inline BigInt parse_prime_arg(const std::string& s) {
  auto v = parse_integers(s);
  if (v.size() != 1) fail(errc::parse_error, "expected one integer: '" + s + "'");
  return v[0];
}

inline MilnorAlgebra<Rational> build_central(const std::string& fsrc,
                                             const std::string& wsrc,
                                             QPoly* f_out = nullptr,
                                             QPoly* g_out = nullptr,
                                             const std::string& gsrc = "") {
  auto w = parse_weights(wsrc);
  auto ring = QPoly::make_ring(RationalRing{}, standard_names(w.size()));
  QPoly f = parse_poly(fsrc, ring);
  if (f_out) *f_out = f;
  if (g_out) *g_out = parse_poly(gsrc, ring);
  auto sing = make_qh(f, std::move(w));
  auto gb = jacobian_basis(sing);
  return MilnorAlgebra<Rational>(std::move(sing), std::move(gb));
}

inline std::string join_ints(const Json& arr) {
  std::string s;
  for (const auto& v : arr) {
    if (!s.empty()) s += ",";
    s += v.dump();
  }
  return s;
}

inline std::string series_str(const Series<Rational>& s) {
  std::string body;
  for (long k = std::max(s.lower(), 0L); k < s.order(); ++k) {
    const Rational c = s.coeff(k);
    if (c == Rational(0)) continue;
    if (!body.empty()) body += " + ";
    body += c.str();
    if (k > 0) body += "*t^" + std::to_string(k);
  }
  if (body.empty()) body = "0";
  return body + " + O(t^" + std::to_string(s.order()) + ")";
}

inline std::vector<Rational> exponents_of(const MilnorAlgebra<Rational>& mil) {
  std::vector<Rational> a;
  for (const auto& m : mil.basis())
    a.push_back(mil.singularity().weight_sum +
                MilnorAlgebra<Rational>::weight_of(mil.singularity().weights, m));
  return a;
}

inline Report witt_arith(const std::string& name, const BigInt& p,
                         const std::vector<BigInt>& a,
                         const std::vector<BigInt>& b, bool mul) {
  if (a.empty() || a.size() != b.size())
    fail(errc::type_mismatch, "component lists must be nonempty and equal length");
  const int len = static_cast<int>(a.size());
  auto wa = make_witt_fp(p, len, a);
  auto wb = make_witt_fp(p, len, b);
  auto wc = mul ? wa * wb : wa + wb;
  Report rep = make_report(name);
  rep.doc["p"] = json_int(p);
  rep.doc["length"] = len;
  rep.doc["a"] = witt_digits_json(wa);
  rep.doc["b"] = witt_digits_json(wb);
  rep.doc["result"] = witt_digits_json(wc);
  rep.doc["value"] = zpm_json(witt_to_zpm(wc));
  rep.text = "components: " + join_ints(rep.doc["result"]) + "\nvalue: " +
             rep.doc["value"]["value"].dump() + " (mod " +
             rep.doc["value"]["mod"].dump() + ")\n";
  return rep;
}

inline Report witt_ghost(const BigInt& p, const std::vector<BigInt>& a) {
  if (a.empty()) fail(errc::type_mismatch, "component list must be nonempty");
  auto w = make_witt_fp(p, static_cast<int>(a.size()), a);
  Report rep = make_report("witt ghost");
  rep.doc["p"] = json_int(p);
  rep.doc["components"] = witt_digits_json(w);
  Json ghosts = Json::array();
  for (int k = 0; k < w.length(); ++k) {
    BigInt g = 0;
    for (int i = 0; i <= k; ++i) {
      BigInt e = pow_ui(p, static_cast<unsigned long>(k - i));
      if (e > 1000000) fail(errc::unsupported, "ghost exponent too large");
      g += pow_ui(p, static_cast<unsigned long>(i)) *
           pow_ui(w.component(i).value(), e.get_ui());
    }
    ghosts.push_back(g.get_str());
  }
  rep.doc["ghost"] = ghosts;
  std::string line;
  for (const auto& v : rep.doc["ghost"]) {
    if (!line.empty()) line += ",";
    line += v.get<std::string>();
  }
  rep.text = "ghost: " + line + "\n";
  return rep;
}

inline void fill_central_header(Report& rep, const MilnorAlgebra<Rational>& mil,
                                const std::string& fsrc) {
  rep.doc["f"] = fsrc;
  rep.doc["weights"] = Json::array();
  for (const auto& w : mil.singularity().weights)
    rep.doc["weights"].push_back(w.str());
  rep.doc["mu"] = mil.mu();
  rep.doc["basis"] =
      monomials_json(mil.basis(), mil.singularity().f.ring().names);
}

inline Report cmd_milnor(const std::string& fsrc, const std::string& wsrc) {
  auto mil = build_central(fsrc, wsrc);
  const auto& names = mil.singularity().f.ring().names;
  Report rep = make_report("milnor");
  fill_central_header(rep, mil, fsrc);
  rep.doc["socle"] = monomial_str(mil.basis().back(), names);
  rep.doc["residue_scale"] = mil.residue_scale().str();
  Json expo = Json::array();
  for (const auto& a : exponents_of(mil)) expo.push_back(a.str());
  rep.doc["exponents"] = expo;
  rep.text = "mu = " + std::to_string(mil.mu()) + "\nbasis:";
  for (const auto& b : rep.doc["basis"]) rep.text += " " + b.get<std::string>();
  rep.text += "\nsocle = " + rep.doc["socle"].get<std::string>() +
              "\nresidue scale = " + mil.residue_scale().str() + "\n";
  return rep;
}

inline Report cmd_residue(const std::string& fsrc, const std::string& wsrc,
                          const std::string& gsrc) {
  QPoly f, g;
  auto mil = build_central(fsrc, wsrc, &f, &g, gsrc);
  Report rep = make_report("residue");
  fill_central_header(rep, mil, fsrc);
  rep.doc["g"] = gsrc;
  const Rational r = mil.residue(g);
  rep.doc["value"] = r.str();
  rep.text = "res = " + r.str() + "\n";
  return rep;
}

inline Report cmd_pairing(const std::string& fsrc, const std::string& wsrc) {
  auto mil = build_central(fsrc, wsrc);
  Report rep = make_report("pairing");
  fill_central_header(rep, mil, fsrc);
  auto k = mil.residue_pairing();
  rep.doc["matrix"] = rational_matrix_json(k);
  rep.text.clear();
  for (size_t i = 0; i < k.size(); ++i) {
    for (size_t j = 0; j < k.size(); ++j)
      rep.text += (j ? " " : "") + k[i][j].str();
    rep.text += "\n";
  }
  return rep;
}

inline Report cmd_family(const std::string& fsrc, const std::string& wsrc,
                         const std::string& gsrc, int sorder, long torder) {
  QPoly f, g;
  auto mil = build_central(fsrc, wsrc, &f, &g, gsrc);
  auto fam = make_family(mil.singularity(), mil.groebner_ptr(), g, sorder);
  FamilyBrieskorn<Rational> fb(std::move(fam), mil);
  auto levels = fb.flat_levels(torder);
  Report rep = make_report("family");
  fill_central_header(rep, mil, fsrc);
  rep.doc["g"] = gsrc;
  rep.doc["s_order"] = sorder;
  rep.doc["t_order"] = torder;
  Json jl = Json::array();
  for (size_t r = 0; r < levels.size(); ++r) {
    Json entry;
    entry["s"] = r;
    Json rows = Json::array();
    for (const auto& row : levels[r]) {
      Json jrow = Json::array();
      for (const auto& s : row) jrow.push_back(series_coeffs_json(s));
      rows.push_back(std::move(jrow));
    }
    entry["matrix"] = std::move(rows);
    jl.push_back(std::move(entry));
  }
  rep.doc["levels"] = std::move(jl);
  for (size_t r = 0; r < levels.size(); ++r) {
    rep.text += "s^" + std::to_string(r) + ":\n";
    for (const auto& row : levels[r]) {
      std::string line;
      for (const auto& s : row)
        line += (line.empty() ? "" : " | ") + series_str(s);
      rep.text += "  " + line + "\n";
    }
  }
  return rep;
}

inline Report cmd_verify(const std::string& fsrc, const std::string& wsrc,
                         const std::string& gsrc, int sorder, long torder,
                         int trials, unsigned seed) {
  QPoly f, g;
  const bool with_family = !gsrc.empty();
  auto mil = with_family ? build_central(fsrc, wsrc, &f, &g, gsrc)
                         : build_central(fsrc, wsrc);
  std::vector<AxiomCheck> checks;
  {
    BrieskornContext<Rational> ctx(mil);
    checks = verify_central_axioms(ctx, torder, trials, seed);
  }
  if (with_family) {
    auto fam = make_family(mil.singularity(), mil.groebner_ptr(), g, sorder);
    FamilyBrieskorn<Rational> fb(std::move(fam), mil);
    for (auto& c : verify_family_axioms(fb, torder, trials, seed)) {
      c.name = "family: " + c.name;
      checks.push_back(std::move(c));
    }
  }
  Report rep = make_report("verify");
  fill_central_header(rep, mil, fsrc);
  if (with_family) rep.doc["g"] = gsrc;
  rep.doc["t_order"] = torder;
  rep.doc["trials"] = trials;
  rep.doc["seed"] = seed;
  Json jc = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    Json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    jc.push_back(std::move(e));
    all = all && c.pass;
    rep.text += std::string(c.pass ? "PASS " : "FAIL ") + c.name +
                (c.pass || c.detail.empty() ? "" : " (" + c.detail + ")") + "\n";
  }
  rep.doc["checks"] = std::move(jc);
  rep.doc["all_pass"] = all;
  rep.text += all ? "all checks passed\n" : "some checks FAILED\n";
  return rep;
}

inline Report cmd_witt_pairing(const std::string& fsrc, const std::string& wsrc,
                               const BigInt& p, int m) {
  auto mil = build_central(fsrc, wsrc);
  auto wp = witt_pairing(mil, p, m);
  Report rep = make_report("witt-pairing");
  fill_central_header(rep, mil, fsrc);
  rep.doc["p"] = json_int(p);
  rep.doc["m"] = m;
  rep.doc["mod"] = json_int(wp.ring.modulus);
  rep.doc["raised_levels"] = wp.raised;
  rep.doc["scale"] = zpm_json(wp.scale);
  Json rows = Json::array();
  for (const auto& row : wp.matrix) {
    Json jrow = Json::array();
    for (const auto& z : row) {
      Json e = zpm_json(z);
      e["witt"] = witt_digits_json(zpm_to_witt(z));
      jrow.push_back(std::move(e));
    }
    rows.push_back(std::move(jrow));
  }
  rep.doc["matrix"] = std::move(rows);
  for (const auto& row : wp.matrix) {
    std::string line;
    for (const auto& z : row)
      line += (line.empty() ? "" : " ") + z.value().get_str();
    rep.text += line + "\n";
  }
  rep.text += "(mod " + wp.ring.modulus.get_str() + ")\n";
  return rep;
}

inline Report cmd_compat(const std::string& fsrc, const std::string& wsrc,
                         const BigInt& p, int mmax) {
  auto mil = build_central(fsrc, wsrc);
  auto cr = compat_check(mil, p, mmax);
  Report rep = make_report("compat");
  fill_central_header(rep, mil, fsrc);
  rep.doc["p"] = json_int(p);
  rep.doc["mmax"] = mmax;
  if (cr.skipped) {
    rep.doc["status"] = "skipped-bad-prime";
    rep.doc["reason"] = cr.reason;
    rep.text = "skipped: " + cr.reason + "\n";
    return rep;
  }
  Json jl = Json::array();
  for (const auto& lvl : cr.levels) {
    Json e;
    e["m"] = lvl.m;
    e["mod"] = json_int(pow_ui(p, static_cast<unsigned long>(lvl.m)));
    Json rows = Json::array();
    for (const auto& row : lvl.matrix) {
      Json jrow = Json::array();
      for (const auto& z : row) jrow.push_back(json_int(z.value()));
      rows.push_back(std::move(jrow));
    }
    e["matrix"] = std::move(rows);
    jl.push_back(std::move(e));
  }
  rep.doc["levels"] = std::move(jl);
  rep.doc["chain_ok"] = cr.chain_ok;
  rep.doc["rational_ok"] = cr.rational_ok;
  rep.text = std::string("chain: ") + (cr.chain_ok ? "ok" : "FAILED") +
             "\nrational: " + (cr.rational_ok ? "ok" : "FAILED") + "\n";
  return rep;
}

}  // namespace cli_detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"exact residue pairings of quasi-homogeneous singularities",
               "wittres"};
  app.require_subcommand(1);
  bool as_json = false;

  std::string fsrc, wsrc, gsrc, psrc, asrc, bsrc, seedsrc;
  int m = 2, mmax = 4, sorder = 2, trials = 8;
  long torder = 8;

  auto* witt = app.add_subcommand("witt", "arithmetic in W_m(F_p)");
  witt->require_subcommand(1);
  auto* wadd = witt->add_subcommand("add", "sum of two Witt vectors");
  auto* wmul = witt->add_subcommand("mul", "product of two Witt vectors");
  auto* wghost = witt->add_subcommand("ghost", "integer ghost components");
  for (auto* c : {wadd, wmul, wghost}) {
    c->add_option("-p,--prime", psrc, "prime")->required();
    c->add_option("-a,--first", asrc, "components in F_p, comma separated")
        ->required();
  }
  for (auto* c : {wadd, wmul})
    c->add_option("-b,--second", bsrc, "components in F_p, comma separated")
        ->required();

  auto* cmilnor =
      app.add_subcommand("milnor", "monomial basis of the Milnor algebra");
  auto* cresidue = app.add_subcommand("residue", "residue of a polynomial");
  auto* cpairing = app.add_subcommand("pairing", "residue pairing matrix");
  auto* cfamily = app.add_subcommand(
      "family", "flat pairing of a one-parameter deformation");
  auto* cverify = app.add_subcommand(
      "verify", "check the defining properties on random sections");
  auto* cwpair =
      app.add_subcommand("witt-pairing", "residue pairing over Z/p^m");
  auto* ccompat = app.add_subcommand(
      "compat", "compare the pairing across levels of Z/p^m");

  for (auto* c :
       {cmilnor, cresidue, cpairing, cfamily, cverify, cwpair, ccompat}) {
    c->add_option("-f,--poly", fsrc, "quasi-homogeneous polynomial")
        ->required();
    c->add_option("-w,--weights", wsrc, "weights, comma separated rationals")
        ->required();
  }
  cresidue->add_option("-g,--element", gsrc, "polynomial to take the residue of")
      ->required();
  cfamily->add_option("-g,--direction", gsrc, "deformation direction")
      ->required();
  cfamily->add_option("--sorder", sorder, "deformation parameter order");
  cfamily->add_option("--torder", torder, "t-adic order");
  cverify->add_option("-g,--direction", gsrc,
                      "deformation direction (adds the family checks)");
  cverify->add_option("--sorder", sorder, "deformation parameter order");
  cverify->add_option("--torder", torder, "t-adic order");
  cverify->add_option("--trials", trials, "random sections per check");
  cverify->add_option("--seed", seedsrc,
                      "random seed (default: WITT_RESIDUE_SEED or 0)");
  cwpair->add_option("-p,--prime", psrc, "prime")->required();
  cwpair->add_option("-m,--level", m, "truncation level")->required();
  ccompat->add_option("-p,--prime", psrc, "prime")->required();
  ccompat->add_option("--mmax", mmax, "largest truncation level");

  for (auto* c : {wadd, wmul, wghost, cmilnor, cresidue, cpairing, cfamily,
                  cverify, cwpair, ccompat})
    c->add_flag("--json", as_json, "emit a JSON report");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  std::string command = "?";
  try {
    Report rep;
    if (wadd->parsed() || wmul->parsed() || wghost->parsed()) {
      const BigInt p = cli_detail::parse_prime_arg(psrc);
      auto a = parse_integers(asrc);
      if (wghost->parsed()) {
        command = "witt ghost";
        rep = cli_detail::witt_ghost(p, a);
      } else {
        command = wmul->parsed() ? "witt mul" : "witt add";
        rep = cli_detail::witt_arith(command, p, a, parse_integers(bsrc),
                                     wmul->parsed());
      }
    } else if (cmilnor->parsed()) {
      command = "milnor";
      rep = cli_detail::cmd_milnor(fsrc, wsrc);
    } else if (cresidue->parsed()) {
      command = "residue";
      rep = cli_detail::cmd_residue(fsrc, wsrc, gsrc);
    } else if (cpairing->parsed()) {
      command = "pairing";
      rep = cli_detail::cmd_pairing(fsrc, wsrc);
    } else if (cfamily->parsed()) {
      command = "family";
      rep = cli_detail::cmd_family(fsrc, wsrc, gsrc, sorder, torder);
    } else if (cverify->parsed()) {
      command = "verify";
      unsigned seed = 0;
      if (!seedsrc.empty()) {
        seed = static_cast<unsigned>(std::stoul(seedsrc));
      } else if (const char* env = std::getenv("WITT_RESIDUE_SEED")) {
        seed = static_cast<unsigned>(std::stoul(env));
      }
      rep = cli_detail::cmd_verify(fsrc, wsrc, gsrc, sorder, torder, trials,
                                   seed);
    } else if (cwpair->parsed()) {
      command = "witt-pairing";
      rep = cli_detail::cmd_witt_pairing(fsrc, wsrc,
                                         cli_detail::parse_prime_arg(psrc), m);
    } else if (ccompat->parsed()) {
      command = "compat";
      rep = cli_detail::cmd_compat(fsrc, wsrc,
                                   cli_detail::parse_prime_arg(psrc), mmax);
    }
    emit_report(out, rep, as_json);
    return 0;
  } catch (const Error& e) {
    if (as_json) {
      Json j;
      j["schema"] = kSchemaTag;
      j["command"] = command;
      j["status"] = "error";
      j["error"]["code"] = errc_name(e.code());
      j["error"]["message"] = e.what();
      out << j.dump(2) << "\n";
    }
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace wittres
