// Command-line front door for the exact graded-bracket toolkit.
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "glat/catalog.hpp"
#include "glat/classify.hpp"
#include "glat/io.hpp"
#include "glat/jordan.hpp"
#include "glat/local.hpp"
#include "glat/structure.hpp"
#include "glat/symbols.hpp"

using namespace glat;
using nlohmann::json;

namespace {

Scalar parse_scalar(const std::string& text) {
  auto v = Scalar::parse(text);
  if (!v) throw Error("malformed scalar \"" + text + "\"");
  return *v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!isspace((unsigned char)ch)) {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<Scalar> parse_scalars(const std::string& text) {
  std::vector<Scalar> out;
  for (const auto& tok : split(text, ',')) out.push_back(parse_scalar(tok));
  return out;
}

Pt parse_pt(const std::string& text) {
  Pt p;
  for (const auto& tok : split(text, ',')) {
    Scalar v = parse_scalar(tok);
    if (!v.is_integer()) throw Error("degree coordinates must be integers: " + text);
    p.push_back(v.re().get_num());
  }
  return p;
}

std::vector<CPair> parse_cpairs(const std::string& text) {
  std::vector<CPair> out;
  for (const auto& grp : split(text, ';')) {
    auto vals = parse_scalars(grp);
    if (vals.size() != 2) throw Error("parameter images must be scalar pairs: " + grp);
    out.push_back({vals[0], vals[1]});
  }
  return out;
}

std::vector<long> parse_longs(const std::string& text) {
  std::vector<long> out;
  for (const auto& tok : split(text, ',')) {
    Scalar v = parse_scalar(tok);
    if (!v.is_integer() || !v.re().get_num().fits_slong_p())
      throw Error("expected small integers: " + text);
    out.push_back(v.re().get_num().get_si());
  }
  return out;
}

ScalarStructure make_named(const std::string& name, const std::string& params,
                           Field field) {
  if (name == "witt") return witt();
  if (name == "wl") {
    AdditiveMap l;
    l.dim = 1;
    for (const Scalar& v : parse_scalars(params)) l.gen_images.push_back({v});
    l.rank = (int)l.gen_images.size();
    return wl(l);
  }
  if (name == "wpi") return wpi(parse_cpairs(params), field);
  if (name == "a1_1") return a1_1();
  if (name == "a2_2") return a2_2();
  if (name == "sl2_z3") return sl2_z3();
  if (name == "sl3_z8") return sl3_z8();
  if (name == "pullback3") return pullback(parse_longs(params), 3, sl2_z3());
  if (name == "pullback8") return pullback(parse_longs(params), 8, sl3_z8());
  throw Error("unknown model \"" + name +
              "\" (expected witt|wl|wpi|a1_1|a2_2|sl2_z3|sl3_z8|pullback3|pullback8)");
}

std::string tag_name(Classification::Tag t) {
  switch (t) {
    case Classification::AdditiveCurrent: return "NonIntegrable";
    case Classification::IntegrableLoop: return "Integrable";
    case Classification::Degenerate: return "Degenerate";
    default: return "Inconclusive";
  }
}

json tmap_json(const std::map<Pt, Scalar, PtLess>& t) {
  json out = json::array();
  for (const auto& [p, v] : t) {
    json e;
    e["degree"] = pt_str(p);
    e["t"] = v.str();
    out.push_back(e);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact constructor/verifier/classifier for lattice-graded brackets"};
  app.require_subcommand(1);

  // ---- construct ----
  std::string c_name, c_params, c_out, c_field = "Q";
  long c_box = 4;
  int c_extra = 0;
  auto* c_cmd = app.add_subcommand("construct", "emit a catalog structure as JSON");
  c_cmd->add_option("--name", c_name, "model name")->required();
  c_cmd->add_option("--params", c_params, "model parameters");
  c_cmd->add_option("--box", c_box, "box radius for the emitted window");
  c_cmd->add_option("--out", c_out, "output file (default stdout)");
  c_cmd->add_option("--field", c_field, "Q or Qi")->check(CLI::IsMember({"Q", "Qi"}));
  c_cmd->add_option("--extra", c_extra, "append spectator coordinates");

  // ---- verify ----
  std::string v_in;
  long v_box = 4;
  int v_threads = 1;
  auto* v_cmd = app.add_subcommand("verify", "bracket axioms + grading sweeps");
  v_cmd->add_option("--in", v_in, "structure JSON")->required();
  v_cmd->add_option("--box", v_box, "box radius");
  v_cmd->add_option("--threads", v_threads, "worker threads for the triple sweep");

  // ---- analyze ----
  std::string a_in, a_mu;
  long a_box = 4;
  int a_trials = 20;
  std::uint64_t a_seed = 1;
  auto* a_cmd = app.add_subcommand("analyze", "grading form, sl2 pairs, probes, centroid");
  a_cmd->add_option("--in", a_in, "structure JSON")->required();
  a_cmd->add_option("--box", a_box, "box radius");
  a_cmd->add_option("--trials", a_trials, "connectivity probe trials");
  a_cmd->add_option("--seed", a_seed, "probe seed");
  a_cmd->add_option("--mu", a_mu, "centroid degree, e.g. \"3\" or \"1,0\"");

  // ---- classify ----
  std::string k_in, k_report;
  long k_box = 4;
  auto* k_cmd = app.add_subcommand("classify", "run the classification pipeline");
  k_cmd->add_option("--in", k_in, "structure JSON")->required();
  k_cmd->add_option("--box", k_box, "box radius");
  k_cmd->add_option("--report", k_report, "write a JSON report here");

  // ---- lmin ----
  std::string m_delta = "0", m_s = "0", m_pairing = "product";
  int m_levels = 3;
  long m_window = 12;
  auto* m_cmd = app.add_subcommand("lmin", "minimal graded extension dimension table (CSV)");
  m_cmd->add_option("--delta", m_delta, "density degree");
  m_cmd->add_option("--s", m_s, "index offset");
  m_cmd->add_option("--pairing", m_pairing, "product or bracket")
      ->check(CLI::IsMember({"product", "bracket"}));
  m_cmd->add_option("--levels", m_levels, "levels to build (>= 1)");
  m_cmd->add_option("--window", m_window, "z-exponent window");

  // ---- oracle ----
  std::string o_op = "product", o_p, o_q;
  long o_cut = 6;
  auto* o_cmd = app.add_subcommand("oracle", "operator products and symbol brackets");
  o_cmd->add_option("--op", o_op, "product|commutator|poisson|cprod")
      ->check(CLI::IsMember({"product", "commutator", "poisson", "cprod"}));
  o_cmd->add_option("--p", o_p, "left operand \"zexp,dexp\"")->required();
  o_cmd->add_option("--q", o_q, "right operand \"zexp,dexp\"")->required();
  o_cmd->add_option("--cut", o_cut, "descent cut for operator products");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_cmd->parsed()) {
      ScalarStructure s =
          make_named(c_name, c_params, c_field == "Qi" ? Field::Qi : Field::Q);
      if (c_extra > 0) s = imprimitive(s, c_extra);
      std::string text = save_structure(s, Box{s.rank, c_box});
      if (c_out.empty())
        std::cout << text << "\n";
      else {
        std::ofstream f(c_out);
        if (!f) throw Error("cannot write " + c_out);
        f << text << "\n";
      }
      return 0;
    }

    if (v_cmd->parsed()) {
      ScalarStructure s = memoized(load_structure_file(v_in));
      Box box{s.rank, v_box};
      JacobiReport rep = check_jacobi(s, box, v_threads);
      long additivity_bad = 0;
      box.each([&](const Pt& a) {
        box.each([&](const Pt& b) {
          if (!box.contains(a + b)) return;  // stay inside the data window
          if (s.cc(a, b).is_zero()) return;
          if (s.l(a + b) != s.l(a) + s.l(b)) ++additivity_bad;
        });
      });
      long sigma_mismatch = 0;
      std::set<Pt, PtLess> seen;
      box.each([&](const Pt& p) {
        Pt q = s.canon_pt(p);
        if (!seen.insert(q).second || !s.in_supp(q)) return;
        bool insig = !s.cc(q, Int(-1) * q).is_zero();
        if (insig != !s.l(q).is_zero()) ++sigma_mismatch;
      });
      std::cout << "structure: " << s.name << ", rank " << s.rank << "\n"
                << "jacobi: " << rep.pairs << " pairs, " << rep.triples << " triples, "
                << rep.violations.size() << " violations\n"
                << "grading additivity on nonzero brackets: " << additivity_bad
                << " violations\n"
                << "sl2-pair set matches {l != 0}: "
                << (sigma_mismatch == 0 ? "yes" : "no") << " (" << sigma_mismatch
                << " mismatches)\n";
      for (size_t i = 0; i < rep.violations.size() && i < 10; ++i) {
        const auto& v = rep.violations[i];
        std::cout << "  violation at " << pt_str(v.a) << "," << pt_str(v.b)
                  << (v.nu.empty() ? "" : "," + pt_str(v.nu))
                  << " residue " << v.residue.str() << "\n";
      }
      return (rep.violations.empty() && additivity_bad == 0) ? 0 : 1;
    }

    if (a_cmd->parsed()) {
      ScalarStructure s = memoized(load_structure_file(a_in));
      Box box{s.rank, a_box};
      LAnalysis la = analyze_l(s, box);
      std::cout << "structure: " << s.name << ", rank " << s.rank << "\n";
      if (la.kind == LAnalysis::Additive) {
        std::cout << "grading form: additive, generator values";
        for (const auto& row : la.lhat.gen_images) std::cout << " " << row[0].str();
        std::cout << "\n";
      } else if (la.kind == LAnalysis::Bounded) {
        std::cout << "grading form: bounded, step " << la.step.str() << ", height "
                  << la.bound << "\n";
      } else {
        std::cout << "grading form: inconclusive (" << la.detail << ")\n";
      }
      SigmaPiReport sp = sigma_pi(s, box);
      std::cout << "sl2-pair degrees: " << sp.sigma.size()
                << ", null degrees: " << sp.pi.size()
                << ", pair criterion: " << (sp.pair_criterion ? "yes" : "no") << "\n";
      ProbeReport pr = simplicity_probe(s, box, a_trials, a_seed);
      int found = 0;
      for (const auto& t : pr.trials) found += t.found ? 1 : 0;
      std::cout << "connectivity probe: " << found << "/" << pr.trials.size()
                << " two-step paths found\n";
      if (!a_mu.empty()) {
        auto cen = centroid_solve(s, box, parse_pt(a_mu));
        std::cout << "centroid at " << a_mu << ": dimension " << cen.size() << "\n";
        for (const auto& el : cen) {
          std::cout << "  psi:";
          int shown = 0;
          for (const auto& [p, v] : el.psi) {
            if (shown++ == 6) {
              std::cout << " ...";
              break;
            }
            std::cout << " [" << pt_str(p) << "]=" << v.str();
          }
          std::cout << "\n";
        }
      }
      return 0;
    }

    if (k_cmd->parsed()) {
      ScalarStructure s = memoized(load_structure_file(k_in));
      Box box{s.rank, k_box};
      Classification cls = classify(s, box);
      json rep;
      rep["tag"] = tag_name(cls.tag);
      rep["box"] = box.radius;
      rep["normalization"] =
          "l(anchor)=1; anchor parameter image (1,0); lowest window slot scaled to 1";
      if (cls.tag == Classification::AdditiveCurrent) {
        json pis = json::array();
        for (const auto& pr : cls.embedding.pi_images)
          pis.push_back(json::array({pr[0].str(), pr[1].str()}));
        rep["pi"] = pis;
        rep["model"] = cls.model;
        rep["witness"] = tmap_json(cls.certificate.t);
      } else if (cls.tag == Classification::IntegrableLoop) {
        rep["type"] = cls.l_analysis.bound;
        rep["period"] = cls.period;
        rep["phi"] = cls.phi;
        rep["model"] = cls.model;
        rep["witness"] = tmap_json(cls.certificate.t);
      } else if (cls.tag == Classification::Degenerate) {
        json ker = json::array();
        for (const auto& p : cls.embedding.kernel_basis) ker.push_back(pt_str(p));
        rep["kernel"] = ker;
      }
      if (!cls.detail.empty()) rep["detail"] = cls.detail;
      std::cout << "tag: " << tag_name(cls.tag);
      if (cls.tag == Classification::IntegrableLoop)
        std::cout << ", type " << cls.l_analysis.bound << ", period " << cls.period;
      if (cls.tag == Classification::AdditiveCurrent) {
        std::cout << ", parameters";
        for (const auto& pr : cls.embedding.pi_images)
          std::cout << " (" << pr[0].str() << "," << pr[1].str() << ")";
      }
      std::cout << "\n";
      if (!cls.detail.empty()) std::cout << "detail: " << cls.detail << "\n";
      if (!k_report.empty()) {
        std::ofstream f(k_report);
        if (!f) throw Error("cannot write " + k_report);
        f << rep.dump(1) << "\n";
      }
      return cls.tag == Classification::Inconclusive ? 3 : 0;
    }

    if (m_cmd->parsed()) {
      Scalar delta = parse_scalar(m_delta), s0 = parse_scalar(m_s);
      LocalAlgebra v = m_pairing == "product" ? product_local(delta, s0)
                                              : bracket_local(delta, s0);
      std::cout << "kind,delta,s,side,level,degree,dim\n";
      int headline = 0;
      for (int side = 0; side < 2; ++side) {
        LocalAlgebra vv = side == 0 ? v : opposite(v);
        Lmin m = lmin_build(vv, m_levels, m_window, 4, m_window);
        auto dims = lmin_dims(m);
        for (const auto& [level, row] : dims) {
          long d0 = -(long)(row.size() / 2);
          for (size_t i = 0; i < row.size(); ++i) {
            long margin = 2L * (level - 1);
            long deg = d0 + (long)i;
            if (std::abs(deg) > m_window - margin) continue;  // interior only
            std::cout << m_pairing << "," << delta.str() << "," << s0.str() << ","
                      << (side == 0 ? "given" : "opposite") << "," << level << ","
                      << deg << "," << row[i] << "\n";
            if (level == m_levels) headline = std::max(headline, row[i]);
          }
        }
      }
      std::cout << m_pairing << "," << delta.str() << "," << s0.str()
                << ",both,headline,*," << headline << "\n";
      return 0;
    }

    if (o_cmd->parsed()) {
      auto pv = parse_scalars(o_p), qv = parse_scalars(o_q);
      if (pv.size() != 2 || qv.size() != 2)
        throw Error("operands must be \"zexp,dexp\" pairs");
      Pdo P = Pdo::mono(Scalar(1), pv[0], pv[1]);
      Pdo Q = Pdo::mono(Scalar(1), qv[0], qv[1]);
      Pdo out;
      if (o_op == "product")
        out = opd_product(P, Q, o_cut);
      else if (o_op == "commutator")
        out = opd_commutator(P, Q, o_cut);
      else if (o_op == "poisson") {
        CPair a{pv[0] - Scalar(1), pv[1] - Scalar(1)};
        CPair b{qv[0] - Scalar(1), qv[1] - Scalar(1)};
        out = Pdo::mono(poisson_coeff(a, b), pv[0] + qv[0] - Scalar(1),
                        pv[1] + qv[1] - Scalar(1));
        out.normalize();
      } else {
        out = Pdo::mono(Scalar(1), pv[0] + qv[0], pv[1] + qv[1]);
      }
      std::cout << out.str() << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
