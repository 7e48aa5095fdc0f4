// hbv: batch driver emitting canonical JSON reports.
//
// Exit status: 0 all checks passed, 1 a verification failed, 2 bad input.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hbv/cyclic/cyclic.hpp"
#include "hbv/errors.hpp"
#include "hbv/tqft/tqft.hpp"

using namespace hbv;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr const char* kSchema = "hbv.report/1";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string group, group_file, algebra, exterior;
  std::string field = "Q";
  std::string coeff = "self";
  std::string convention = "standard";
  std::vector<std::string> cobordisms;
  std::vector<long long> coeffs;
  int max_degree = 4;
  int power = 1;
  bool twisted = false;
  bool exact_sequence = false;
  bool strict = false;
  bool timing = false;
  std::string output;
};

json coords(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

json matrix(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(coords(m.row(r)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

json check(const std::string& name, bool ok, std::size_t cases, json witness = nullptr) {
  json c{{"name", name}, {"passed", ok}, {"cases", cases}};
  if (!ok) c["witness"] = std::move(witness);
  return c;
}

json checks_of(const std::vector<CheckResult>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(check(c.name, c.passed, c.cases, c.witness));
  return a;
}

struct Model {
  FDAlgebra algebra;
  std::optional<FrobeniusStructure> pairing;  // from the algebra file

  FrobeniusStructure frobenius() const { return pairing ? *pairing : default_frobenius(algebra); }
};

Field parse_field(const std::string& s) {
  try {
    return Field::parse(s);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw ValidationError("malformed JSON in '" + path + "': " + e.what());
  }
}

Model load_model(const Options& o) {
  const int sources = !o.group.empty() + !o.group_file.empty() + !o.algebra.empty() + !o.exterior.empty();
  if (sources != 1) throw ValidationError("give exactly one of --group, --group-file, --algebra, --exterior");
  if (!o.group.empty()) return {group_algebra(FiniteGroup::preset(o.group), parse_field(o.field)), std::nullopt};
  if (!o.group_file.empty())
    return {group_algebra(FiniteGroup::from_json(read_json(o.group_file)), parse_field(o.field)), std::nullopt};
  if (!o.exterior.empty()) {
    std::vector<int> degrees;
    std::stringstream ss(o.exterior);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        degrees.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw ValidationError("--exterior expects comma-separated degrees, got '" + o.exterior + "'");
      }
    }
    return {exterior_algebra(degrees, parse_field(o.field)), std::nullopt};
  }
  const json j = read_json(o.algebra);
  if (j.contains("pairing")) {
    FrobeniusAlgebraFile f = load_frobenius_algebra(o.algebra);
    return {std::move(f.algebra), std::move(f.frobenius)};
  }
  return {FDAlgebra::from_json(j), std::nullopt};
}

json model_config(const Options& o) {
  json c;
  if (!o.group.empty()) c["group"] = o.group;
  if (!o.group_file.empty()) c["group_file"] = o.group_file;
  if (!o.algebra.empty()) c["algebra"] = o.algebra;
  if (!o.exterior.empty()) c["exterior"] = o.exterior;
  if (o.algebra.empty()) c["field"] = o.field;
  return c;
}

void need_window(const Options& o) {
  if (o.max_degree < 3) throw ValidationError("--max-degree must be at least 3");
}

struct Outcome {
  json config;
  json result = json::object();
  json checks = json::array();
};

/// Moves the "checks" array of a module report into the outcome.
void absorb(Outcome& out, json report) {
  for (const auto& c : report["checks"]) out.checks.push_back(c);
  report.erase("checks");
  report.erase("passed");
  out.result = std::move(report);
}

Outcome run_hochschild(const Options& o) {
  need_window(o);
  if (o.coeff != "self" && o.coeff != "dual") throw ValidationError("--coeff must be self or dual");
  const Model m = load_model(o);
  const Coefficients c = o.coeff == "self" ? Coefficients::Self : Coefficients::Dual;
  Outcome out{model_config(o)};
  out.config["coeff"] = o.coeff;
  out.config["max_degree"] = o.max_degree;
  Hochschild h(m.algebra, o.max_degree);
  out.result["dimensions"] = h.dimensions(c);
  out.result["algebra_dimension"] = m.algebra.dim();
  if (m.algebra.group()) out.result["conjugacy_classes"] = m.algebra.group()->conjugacy_classes().size();
  return out;
}

Outcome run_cyclic(const Options& o) {
  need_window(o);
  const Model m = load_model(o);
  Outcome out{model_config(o)};
  out.config["max_degree"] = o.max_degree;
  CyclicComplex c(m.algebra, o.max_degree);
  absorb(out, connes_maps(c).to_json());
  return out;
}

Outcome run_bv(const Options& o) {
  need_window(o);
  if (o.convention != "standard" && o.convention != "alternative")
    throw ValidationError("--bv-sign-convention must be standard or alternative");
  const Model m = load_model(o);
  Outcome out{model_config(o)};
  out.config["max_degree"] = o.max_degree;
  out.config["bv_sign_convention"] = o.convention;
  const auto conv = o.convention == "standard" ? BVSignConvention::Standard : BVSignConvention::Alternative;
  absorb(out, bv_check(m.algebra, m.frobenius(), o.max_degree, conv).to_json());
  return out;
}

Outcome run_string(const Options& o) {
  need_window(o);
  const Model m = load_model(o);
  Outcome out{model_config(o)};
  out.config["max_degree"] = o.max_degree;
  const FrobeniusStructure s = m.frobenius();
  const StringReport lie = string_bracket_check(m.algebra, s, o.max_degree);
  const StringReport mor = lie_morphism_check(m.algebra, s, o.max_degree);
  out.result["hc_dimensions"] = lie.dimensions;
  out.result["max_degree"] = lie.max_degree;
  out.checks = checks_of(lie.checks);
  for (const auto& c : checks_of(mor.checks)) out.checks.push_back(c);
  return out;
}

json frobenius_json(const FrobeniusStructure& s) {
  return {{"pairing", matrix(s.pairing)},
          {"degree", s.degree},
          {"nondegenerate", s.flags.nondegenerate},
          {"frobenius_identity", s.flags.frobenius_identity},
          {"symmetric", s.flags.symmetric}};
}

Outcome run_frobenius(const Options& o) {
  const Model m = load_model(o);
  const FDAlgebra& a = m.algebra;
  Outcome out{model_config(o)};
  std::optional<FrobeniusStructure> s;
  if (m.pairing) {
    s = m.pairing;
    out.result["source"] = "file";
  } else if (a.has_hopf() && !a.is_graded()) {
    // beta(h, k) = lambda(h k u), lambda a left integral of the dual
    const auto u = find_s2_conjugator(a);
    const auto di = find_integrals(dual_hopf_algebra(a));
    if (u && !di.left.empty()) {
      s = frobenius_from_integral(a, di.left.front(), *u);
      out.result["source"] = "hopf_integral";
    }
  } else {
    s = default_frobenius(a);
    out.result["source"] = "default";
  }
  if (s) {
    out.result["frobenius"] = frobenius_json(*s);
    const bool ok = s->flags.nondegenerate && s->flags.frobenius_identity;
    json w;
    if (s->flags.identity_witness) w["triple"] = *s->flags.identity_witness;
    out.checks.push_back(check("frobenius_form", ok, 1, w));
  }
  if (a.group()) {
    const LambdaL l = lambda_L(a);
    out.result["lambda_L"] = {{"matrix", matrix(l.matrix)}, {"bimodule", l.bimodule}};
    json w;
    if (l.witness) w["triple"] = *l.witness;
    out.checks.push_back(check("lambda_L_bimodule", l.bimodule, 1, w));
    const FrobeniusStructure g = group_frobenius(a);
    out.checks.push_back(check("lambda_L_symmetric", g.flags.symmetric && g.flags.nondegenerate, 1));
  }
  const SymmetricFormSearch sym = symmetric_form_exists(a);
  out.result["symmetric_form"] = {{"exists", sym.exists}, {"decided", sym.decided},
                                  {"trace_dimension", sym.trace_dimension}};
  if (a.has_hopf()) {
    const IntegralReport ir = find_integrals(a);
    const bool inner = find_s2_conjugator(a).has_value();
    out.result["unimodular"] = ir.unimodular;
    out.result["s2_inner"] = inner;
    if (sym.decided)
      out.checks.push_back(check("symmetric_iff_unimodular_and_s2_inner", sym.exists == (ir.unimodular && inner), 1,
                                 json{{"symmetric", sym.exists}, {"unimodular", ir.unimodular}}));
  }
  return out;
}

Outcome run_integrals(const Options& o) {
  const Model m = load_model(o);
  const FDAlgebra& a = m.algebra;
  if (!a.has_hopf()) throw PreconditionError("integrals need a Hopf algebra");
  Outcome out{model_config(o)};
  const IntegralReport r = find_integrals(a);
  auto list = [](const std::vector<Vector>& vs) {
    json l = json::array();
    for (const auto& v : vs) l.push_back(coords(v));
    return l;
  };
  out.result = {{"left", list(r.left)}, {"right", list(r.right)}, {"two_sided", list(r.two_sided)},
                {"unimodular", r.unimodular}};
  if (a.group()) {
    const Vector ones(a.dim(), Scalar::one(a.field()));
    auto spanned = [&](const std::vector<Vector>& vs) {
      if (vs.size() != 1) return false;
      std::size_t k = 0;
      while (k < a.dim() && vs[0][k].is_zero()) ++k;
      return k < a.dim() && scaled(vs[0], vs[0][k].inverse()) == ones;
    };
    out.checks.push_back(check("integral_is_sum_of_group_elements", spanned(r.left) && spanned(r.right), 2));
  }
  return out;
}

Outcome run_tqft(const Options& o) {
  if (o.cobordisms.size() != 1) throw ValidationError("tqft eval needs exactly one --cobordism");
  const Model m = load_model(o);
  Outcome out{model_config(o)};
  out.config["cobordism"] = o.cobordisms.front();
  out.config["strict_positive_boundary"] = o.strict;
  const Cobordism c = load_cobordism(o.cobordisms.front());
  const FrobeniusTQFT t(m.algebra, m.frobenius());
  const TQFTMap v = t.evaluate(c, o.strict);
  out.result = {{"cobordism", c.to_json()},
                {"euler_characteristic", euler_characteristic(c)},
                {"p", v.p},
                {"q", v.q},
                {"matrix", matrix(v.matrix)},
                {"handle", coords(t.handle())}};
  return out;
}

Outcome run_detline(const Options& o) {
  if (o.cobordisms.empty()) throw ValidationError("detline needs at least one --cobordism");
  if (!o.coeffs.empty() && o.coeffs.size() != o.cobordisms.size())
    throw ValidationError("give one --coeff per --cobordism");
  Outcome out;
  out.config = {{"cobordisms", o.cobordisms}, {"power", o.power}, {"twisted", o.twisted}};
  if (!o.coeffs.empty()) out.config["coeffs"] = o.coeffs;
  std::optional<Cobordism> total;
  std::optional<DetLine> line;
  for (std::size_t i = 0; i < o.cobordisms.size(); ++i) {
    const Cobordism c = load_cobordism(o.cobordisms[i]);
    DetLine x = det_line(c, o.coeffs.empty() ? 1 : o.coeffs[i], o.power);
    if (o.twisted) x.coeff = boost::multiprecision::pow(x.coeff, static_cast<unsigned>(o.power));
    total = total ? compose(*total, c) : c;
    line = line ? det_compose(*line, x) : x;
  }
  out.result = {{"in", line->in},
                {"out", line->out},
                {"rank", line->rank},
                {"coeff", line->coeff.str()},
                {"power", line->power},
                {"cobordism", total->to_json()}};
  const int chi = euler_characteristic(*total);
  out.checks.push_back(check("rank_is_minus_chi", line->rank == -chi, 1, json{{"rank", line->rank}, {"chi", chi}}));
  if (o.exact_sequence) {
    const Field q = Field::rationals();
    const FourTermDiagram dg{Matrix::from_rows(q, {{1}, {0}}),   Matrix::from_rows(q, {{0, 1}, {0, 0}}),
                             Matrix::from_rows(q, {{0, 1}}),     Matrix::from_rows(q, {{2}}),
                             Matrix::from_rows(q, {{2, 0}, {0, 3}}), Matrix::from_rows(q, {{3, 0}, {0, 1}}),
                             Matrix::from_rows(q, {{1}})};
    const FourTermReport r = check_four_term(dg);
    out.result["exact_sequence"] = {{"det_a", r.det_a.str()}, {"det_b", r.det_b.str()}, {"det_c", r.det_c.str()},
                                    {"det_d", r.det_d.str()}, {"exact", r.exact}, {"commutes", r.commutes}};
    out.checks.push_back(check("det_a_det_c_eq_det_b_det_d", r.exact && r.commutes && r.identity, 1));
  }
  return out;
}

Outcome run_oracle(const Options& o) {
  need_window(o);
  const Model m = load_model(o);
  if (!m.algebra.group()) throw PreconditionError("oracle needs a group (--group or --group-file)");
  Outcome out{model_config(o)};
  out.config["max_degree"] = o.max_degree;
  Hochschild h(m.algebra, o.max_degree);
  const auto hh = h.dimensions(Coefficients::Self);
  const auto oracle = centralizer_oracle(*m.algebra.group(), m.algebra.field(), o.max_degree);
  out.result = {{"hochschild", hh}, {"centralizer_sum", oracle}};
  json w;
  for (std::size_t n = 0; n < hh.size(); ++n)
    if (hh[n] != oracle[n]) {
      w = {{"degree", n}, {"hochschild", hh[n]}, {"centralizer_sum", oracle[n]}};
      break;
    }
  out.checks.push_back(check("centralizer_decomposition", hh == oracle, hh.size(), w));
  return out;
}

void add_model_options(CLI::App* s, Options& o) {
  s->add_option("--group", o.group, "group preset (Z2, Z3, Z4, Z6, S3, D4, Q8, Zn)");
  s->add_option("--group-file", o.group_file, "group file (JSON multiplication table)");
  s->add_option("--algebra", o.algebra, "algebra file (JSON structure constants)");
  s->add_option("--exterior", o.exterior, "exterior algebra on odd generators, e.g. 1,3");
  s->add_option("--field", o.field, "Q, F2, F3, Fp:7 ...");
}

void add_common(CLI::App* s, Options& o) {
  s->add_option("--output", o.output, "write the report here instead of stdout");
  s->add_flag("--timing", o.timing, "include wall-clock timing in the report");
}

int emit(const std::string& command, const Outcome& out, const Options& o, double seconds) {
  bool passed = true;
  for (const auto& c : out.checks) passed = passed && c.at("passed").get<bool>();
  json r{{"schema", kSchema},
         {"tool", {{"name", "hbv"}, {"version", kVersion}}},
         {"command", command},
         {"config", out.config.is_null() ? json::object() : out.config},
         {"result", out.result},
         {"checks", out.checks},
         {"passed", passed}};
  if (o.timing) r["timing"] = {{"seconds", seconds}};
  const std::string text = r.dump(2) + "\n";
  if (o.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.output, std::ios::binary);
    if (!f || !(f << text) || !f.flush()) throw IoError("cannot write report to '" + o.output + "'");
  }
  if (!passed)
    for (const auto& c : out.checks)
      if (!c.at("passed").get<bool>()) std::cerr << "verification failed: " << c.at("name").get<std::string>() << "\n";
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hbv: Hochschild cohomology, BV structures, cyclic cohomology and 2d TQFT evaluation"};
  app.require_subcommand(1);
  Options o;

  auto* hh = app.add_subcommand("hochschild", "dimensions of HH^n(A; A) or HH^n(A; A^dual)");
  add_model_options(hh, o);
  hh->add_option("--coeff", o.coeff, "self or dual");
  hh->add_option("--max-degree", o.max_degree, "truncation N (>= 3)");

  auto* cyc = app.add_subcommand("cyclic", "HC^n and the Connes exact sequence");
  add_model_options(cyc, o);
  cyc->add_option("--max-degree", o.max_degree, "truncation N (>= 3)");

  auto* bv = app.add_subcommand("bv-check", "BV identities on HH^*(A; A)");
  add_model_options(bv, o);
  bv->add_option("--max-degree", o.max_degree, "truncation N (>= 3)");
  bv->add_option("--bv-sign-convention", o.convention, "standard or alternative");

  auto* sb = app.add_subcommand("string-bracket", "string bracket on HC^* and the Lie morphism to HH^*");
  add_model_options(sb, o);
  sb->add_option("--max-degree", o.max_degree, "truncation N (>= 3)");

  auto* fr = app.add_subcommand("frobenius", "Frobenius / symmetric Frobenius structures");
  add_model_options(fr, o);

  auto* in = app.add_subcommand("integrals", "left, right and two-sided integrals of a Hopf algebra");
  add_model_options(in, o);

  auto* tq = app.add_subcommand("tqft", "2d TQFT evaluation");
  tq->require_subcommand(1);
  auto* ev = tq->add_subcommand("eval", "evaluate a cobordism");
  add_model_options(ev, o);
  ev->add_option("--cobordism", o.cobordisms, "preset (cyl, pants, copants, cap_in, cap_out, twist) or file")
      ->expected(1);
  ev->add_flag("--strict-positive-boundary", o.strict, "refuse components without in- and out-circles");

  auto* dl = app.add_subcommand("detline", "determinant lines of composed cobordisms");
  dl->add_option("--cobordism", o.cobordisms, "repeat to compose left to right")->take_all();
  dl->add_option("--coeff", o.coeffs, "coefficient of each line (default 1)")->take_all();
  dl->add_option("--power", o.power, "twisting power d");
  dl->add_flag("--twisted", o.twisted, "raise coefficients to the power d before composing");
  dl->add_flag("--exact-sequence", o.exact_sequence, "also run the four-term determinant check");

  auto* orc = app.add_subcommand("oracle", "HH^n(F[G]; F[G]) against the centralizer decomposition");
  add_model_options(orc, o);
  orc->add_option("--max-degree", o.max_degree, "truncation N (>= 3)");

  for (auto* s : {hh, cyc, bv, sb, fr, in, ev, dl, orc}) add_common(s, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    std::string command;
    Outcome out;
    if (hh->parsed()) command = "hochschild", out = run_hochschild(o);
    else if (cyc->parsed()) command = "cyclic", out = run_cyclic(o);
    else if (bv->parsed()) command = "bv-check", out = run_bv(o);
    else if (sb->parsed()) command = "string-bracket", out = run_string(o);
    else if (fr->parsed()) command = "frobenius", out = run_frobenius(o);
    else if (in->parsed()) command = "integrals", out = run_integrals(o);
    else if (ev->parsed()) command = "tqft eval", out = run_tqft(o);
    else if (dl->parsed()) command = "detline", out = run_detline(o);
    else command = "oracle", out = run_oracle(o);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return emit(command, out, o, secs);
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << " (set HBV_BUDGET to raise the cap)\n";
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
  } catch (const ModelError& e) {
    std::cerr << "unsupported model: " << e.what() << "\n";
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
  } catch (const WindowError& e) {
    std::cerr << "degree out of range: " << e.what() << "\n";
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
