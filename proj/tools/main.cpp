// momentkit: batch front end for the moment-problem toolkit.
// Ingests a moment file or a named generator, runs one analysis command,
// and emits a deterministic machine-readable report (JSON, or CSV for the
// tabular commands).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "momentkit/determinacy.hpp"
#include "momentkit/hankel.hpp"
#include "momentkit/io.hpp"
#include "momentkit/jacobi.hpp"
#include "momentkit/nevanlinna.hpp"
#include "momentkit/pade.hpp"
#include "momentkit/version.hpp"

using namespace momentkit;

namespace {

struct JobSpec {
  std::string file;
  std::string generator;
  int terms = 12;
  std::string command;
  long precision = 256;
  int depth = 10;
  std::string x = "1";
  std::string shapes = "-1,0,1";
  std::string variant = "F";
  std::string out;
  std::string format = "json";
  // transform params
  std::string op;
  std::string c = "0";
  int ell = 1;
};

struct Input {
  bool exact = true;
  MomentSequence<Rational> rat;
  MomentSequence<BigFloat> flt;
  std::string source;
  std::string digest;
};

Input load_input(const JobSpec& job) {
  Input in;
  if (!job.file.empty()) {
    MomentFile mf = load_moment_file(job.file);
    in.exact = mf.exact;
    in.source = "file:" + job.file;
    if (mf.exact) {
      in.rat = to_exact(mf);
      in.digest = sequence_digest(in.rat);
    }
    in.flt = to_float(mf);
    if (!mf.exact) in.digest = sequence_digest(in.flt);
  } else if (!job.generator.empty()) {
    Family fam = family_from_name(job.generator);
    in.source = "generator:" + job.generator;
    if (fam == Family::lognormal) {
      in.exact = false;
      in.flt = generate<BigFloat>(fam, job.terms);
      in.digest = sequence_digest(in.flt);
    } else {
      in.exact = true;
      in.rat = generate<Rational>(fam, job.terms);
      in.flt = generate<BigFloat>(fam, job.terms);
      in.digest = sequence_digest(in.rat);
    }
  } else {
    raise(errc::schema_error, "either --file or --generator is required");
  }
  return in;
}

// "a+bi" | "a-bi" | "bi" | "i" | "a"; components are scalar strings
std::pair<std::string, std::string> split_complex(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) raise(errc::schema_error, "empty numeric literal");
  if (t.back() != 'i') return {t, "0"};
  t.pop_back();
  if (t.empty() || t == "+") return {"0", "1"};
  if (t == "-") return {"0", "-1"};
  // find the sign separating re and im (skip exponent signs and pos 0)
  size_t split = std::string::npos;
  for (size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {"0", t};
  std::string im = t.substr(split);
  if (im == "+") im = "1";
  if (im == "-") im = "-1";
  return {t.substr(0, split), im};
}

bool is_decimal(const std::string& s) {
  return s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
         s.find('E') != std::string::npos;
}

Rational parse_rational(const std::string& s) { return Rational::from_string(s); }
BigFloat parse_float(const std::string& s) {
  return is_decimal(s) ? BigFloat::from_string(s)
                       : BigFloat(Rational::from_string(s));
}

std::vector<int> parse_shapes(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  if (out.empty()) raise(errc::schema_error, "--shapes parsed to an empty list");
  return out;
}

json make_header(const JobSpec& job, const Input& in, bool exact_mode) {
  json doc;
  doc["tool"] = {{"name", "momentkit"}, {"version", MOMENTKIT_VERSION}};
  doc["command"] = job.command;
  json input;
  input["source"] = in.source;
  input["digest"] = in.digest;
  input["kind"] = kind_name(in.exact ? in.rat.kind : in.flt.kind);
  input["max_index"] = in.exact ? in.rat.max_index() : in.flt.max_index();
  doc["input"] = input;
  json mode;
  mode["arithmetic"] = exact_mode ? "exact" : "float";
  if (!exact_mode) mode["precision_bits"] = job.precision;
  doc["mode"] = mode;
  json repro;
  repro["tool_version"] = MOMENTKIT_VERSION;
  json params;
  params["precision"] = job.precision;
  params["depth"] = job.depth;
  params["x"] = job.x;
  params["shapes"] = job.shapes;
  params["variant"] = job.variant;
  if (!job.op.empty()) {
    params["op"] = job.op;
    params["c"] = job.c;
    params["ell"] = job.ell;
  }
  repro["parameters"] = params;
  doc["reproducibility"] = repro;
  return doc;
}

template <class T>
json render_list(const std::vector<T>& xs) {
  json arr = json::array();
  for (const auto& x : xs) arr.push_back(render_scalar(x));
  return arr;
}

template <class T>
json hankel_json(const HankelReport<T>& rep) {
  json r;
  r["h"] = render_list(rep.h);
  r["s"] = render_list(rep.s);
  if (rep.first_h_failure) r["first_h_failure"] = *rep.first_h_failure;
  if (rep.first_s_failure) r["first_s_failure"] = *rep.first_s_failure;
  r["verdict"] = verdict_name(rep.verdict);
  if (rep.low_confidence) r["low_confidence"] = true;
  return r;
}

template <class T>
json run_analyze(const MomentSequence<T>& seq) {
  auto rep = existence_check(seq);
  json r = hankel_json(rep);
  int naux = std::min(8, seq.max_index() / 2);
  if (naux >= 1 && !rep.first_h_failure) {
    auto aux = aux_dets(seq, naux);
    json a;
    a["h_tilde"] = render_list(aux.h_tilde);
    a["t"] = render_list(aux.t);
    a["v"] = render_list(aux.v);
    a["w"] = render_list(aux.w);
    a["y"] = render_list(aux.y);
    r["aux_dets"] = a;
  }
  return r;
}

template <class T>
json run_jacobi(const MomentSequence<T>& seq, int depth) {
  int N = std::min(depth, (seq.max_index() + 1) / 2);
  if (N < 1) raise(errc::too_short, "need at least gamma_0, gamma_1");
  auto rc = recursion_coeffs(seq, N);
  json r;
  r["depth"] = N;
  r["b"] = render_list(rc.b);
  r["a2"] = render_list(rc.a2);
  return r;
}

json run_quadrature(const MomentSequence<BigFloat>& seq, int depth,
                    const std::string& variant) {
  Variant v = variant == "K" ? Variant::K : Variant::F;
  int N = std::min(depth, (seq.max_index() + 1) / 2 - (v == Variant::K ? 1 : 0));
  if (N < 1) raise(errc::too_short, "not enough moments for a section");
  auto rc = v == Variant::K ? chebyshev_coeffs(seq, N, N)
                            : recursion_coeffs(seq, N);
  auto quad = eigensystem(section(rc, N, v));
  json r;
  r["variant"] = variant == "K" ? "K" : "F";
  r["depth"] = N;
  r["nodes"] = render_list(quad.nodes);
  r["weights"] = render_list(quad.weights);
  return r;
}

std::string csv_quadrature(const json& r) {
  std::ostringstream os;
  os << "index,node,weight\n";
  const auto& nodes = r["nodes"];
  const auto& weights = r["weights"];
  for (size_t i = 0; i < nodes.size(); ++i)
    os << i << "," << nodes[i].get<std::string>() << ","
       << weights[i].get<std::string>() << "\n";
  return os.str();
}

template <class T>
json pade_table_json(const PadeTable<T>& table) {
  json r;
  r["x"] = render_scalar(table.x);
  r["n_max"] = table.n_max;
  json rows = json::array();
  for (size_t s = 0; s < table.shapes.size(); ++s) {
    json row;
    row["shape"] = table.shapes[s];
    json vals = json::array();
    for (const auto& cell : table.rows[s]) {
      json c;
      c["N"] = cell.N;
      c["M"] = cell.M;
      if (cell.pole) c["status"] = "pole";
      else if (!cell.exists) c["status"] = "not_exists";
      else {
        c["status"] = "ok";
        c["value"] = render_scalar(cell.value);
      }
      vals.push_back(c);
    }
    row["values"] = vals;
    rows.push_back(row);
  }
  r["rows"] = rows;
  if (table.bracket_valid) {
    json b;
    b["N"] = table.bracket_N;
    b["lower"] = render_scalar(table.bracket_lo);
    b["upper"] = render_scalar(table.bracket_hi);
    r["bracket"] = b;
  }
  if (!table.warnings.empty()) r["warnings"] = table.warnings;
  return r;
}

std::string csv_pade(const json& r) {
  std::ostringstream os;
  os << "shape,N,M,status,value\n";
  for (const auto& row : r["rows"]) {
    for (const auto& cell : row["values"]) {
      os << row["shape"].get<int>() << "," << cell["N"].get<int>() << ","
         << cell["M"].get<int>() << "," << cell["status"].get<std::string>()
         << ",";
      if (cell.contains("value")) os << cell["value"].get<std::string>();
      os << "\n";
    }
  }
  return os.str();
}

json complex_json(const ComplexBigFloat& z) {
  json r;
  r["re"] = render_scalar(z.re);
  r["im"] = render_scalar(z.im);
  return r;
}

json run_nevanlinna(const MomentSequence<BigFloat>& seq, int depth,
                    const std::string& xarg) {
  auto [res, ims] = split_complex(xarg);
  ComplexBigFloat z(parse_float(res), parse_float(ims));
  int N = std::min(depth, (seq.max_index()) / 2 - 1);
  if (N < 1) raise(errc::too_short, "not enough moments for the transfer product");
  auto rc = chebyshev_coeffs(seq, N + 1, N + 1);
  auto m = abcd(rc, z, N);
  json r;
  r["z"] = complex_json(z);
  r["depth"] = N;
  r["A"] = complex_json(m.A);
  r["B"] = complex_json(m.B);
  r["C"] = complex_json(m.C);
  r["D"] = complex_json(m.D);
  r["ad_minus_bc_residual"] =
      render_scalar(abs_value(m.A * m.D - m.B * m.C - ComplexBigFloat(BigFloat(1))), 6);
  r["last_increment"] = render_scalar(m.last_increment, 6);
  if (z.im > BigFloat(0)) {
    auto disk = weyl_disk(rc, z, N);
    json d;
    d["center"] = complex_json(disk.center);
    d["radius"] = render_scalar(disk.radius);
    d["norm_p2"] = render_scalar(disk.norm_p2);
    r["weyl_disk"] = d;
    auto g0 = vonneumann_G(rc, std::optional<BigFloat>(BigFloat(0)), z, N);
    auto gi = vonneumann_G(rc, std::nullopt, z, N);
    r["G_t0"] = complex_json(g0);
    r["G_tinf"] = complex_json(gi);
  }
  return r;
}

template <class T>
json run_transform(const MomentSequence<T>& seq, const JobSpec& job) {
  MomentSequence<T> out;
  if (job.op == "shift") {
    T c;
    if constexpr (is_exact_v<T>) c = parse_rational(job.c);
    else c = parse_float(job.c);
    out = shift_moments(seq, c);
  } else if (job.op == "index-shift") {
    out = index_shift(seq, job.ell);
  } else if (job.op == "even-embed") {
    out = even_embed(seq);
  } else {
    raise(errc::schema_error,
          "--op must be shift | index-shift | even-embed, got '" + job.op + "'");
  }
  return moment_sequence_to_json(out);
}

json trend_json(const TrendFit& t) {
  json r;
  r["model"] = t.model == TrendFit::Model::log_n ? "log_n" : "sqrt_n";
  r["c1"] = render_scalar(t.c1, 8);
  r["c2"] = render_scalar(t.c2, 8);
  r["residual"] = render_scalar(t.residual, 8);
  r["divergent"] = t.divergent;
  return r;
}

json run_classify(const MomentSequence<BigFloat>& seq, int depth, long precision) {
  auto rep = classify(seq, depth, precision);
  json r;
  r["verdict"] = determinacy_verdict_name(rep.verdict);
  r["evidence"] = rep.evidence;
  json carl;
  carl["hamburger_partials"] = render_list(rep.carleman.hamburger_partials);
  carl["hamburger_trend"] = trend_json(rep.carleman.hamburger_trend);
  if (rep.carleman.stieltjes_applicable) {
    carl["stieltjes_partials"] = render_list(rep.carleman.stieltjes_partials);
    carl["stieltjes_trend"] = trend_json(rep.carleman.stieltjes_trend);
  }
  r["carleman"] = carl;
  if (!rep.L_partials.empty()) {
    r["L_partials"] = render_list(rep.L_partials);
    r["M_partials"] = render_list(rep.M_partials);
  }
  r["depth"] = rep.depth;
  r["precision"] = rep.precision;
  return r;
}

void emit(const JobSpec& job, const std::string& text) {
  if (job.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(job.out, std::ios::binary);
  if (!f) raise(errc::schema_error, "cannot write '" + job.out + "'");
  f << text;
}

int run(const JobSpec& job) {
  ScopedPrecision guard(job.precision);
  Input in = load_input(job);

  bool exact_capable = job.command == "analyze" || job.command == "jacobi" ||
                       job.command == "pade" || job.command == "transform";
  bool exact_mode = in.exact && exact_capable;
  if (job.command == "pade" && is_decimal(job.x)) exact_mode = false;
  if (job.command == "transform" && job.op == "shift" && is_decimal(job.c))
    exact_mode = false;

  if (job.format == "csv" && job.command != "pade" && job.command != "quadrature")
    raise(errc::schema_error, "csv output is only for pade and quadrature");

  json doc = make_header(job, in, exact_mode);
  json result;
  if (job.command == "analyze") {
    result = exact_mode ? run_analyze(in.rat) : run_analyze(in.flt);
  } else if (job.command == "jacobi") {
    result = exact_mode ? run_jacobi(in.rat, job.depth)
                        : run_jacobi(in.flt, job.depth);
  } else if (job.command == "quadrature") {
    result = run_quadrature(in.flt, job.depth, job.variant);
  } else if (job.command == "pade") {
    auto shapes = parse_shapes(job.shapes);
    if (exact_mode) {
      auto table = pade_table(in.rat, parse_rational(job.x), job.depth, shapes);
      result = pade_table_json(table);
    } else {
      auto table = pade_table(in.flt, parse_float(job.x), job.depth, shapes);
      result = pade_table_json(table);
    }
  } else if (job.command == "nevanlinna") {
    result = run_nevanlinna(in.flt, job.depth, job.x);
  } else if (job.command == "transform") {
    // emits a moment file document so transforms compose with --file
    json out = exact_mode ? run_transform(in.rat, job)
                          : run_transform(in.flt, job);
    emit(job, out.dump(2) + "\n");
    return 0;
  } else if (job.command == "classify") {
    result = run_classify(in.flt, job.depth, job.precision);
  } else {
    raise(errc::schema_error, "unknown command '" + job.command + "'");
  }
  doc["result"] = result;

  if (job.format == "csv") {
    emit(job, job.command == "pade" ? csv_pade(result) : csv_quadrature(result));
  } else {
    emit(job, doc.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"momentkit: computational toolkit for the classical moment problem"};
  app.require_subcommand(1);

  JobSpec job;
  std::vector<CLI::App*> subs;
  for (const char* name :
       {"analyze", "jacobi", "quadrature", "pade", "nevanlinna", "transform",
        "classify"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--file", job.file, "moment file (JSON)");
    sub->add_option("--generator", job.generator,
                    "named family: hermite | laguerre | lognormal");
    sub->add_option("--terms", job.terms, "generator prefix length K");
    sub->add_option("--precision", job.precision, "float precision in bits (>= 64)");
    sub->add_option("--depth", job.depth, "truncation depth N");
    sub->add_option("--x", job.x, "evaluation point (scalar, or a+bi for nevanlinna)");
    sub->add_option("--shapes", job.shapes, "comma list of staircase offsets");
    sub->add_option("--variant", job.variant, "section variant: F | K");
    sub->add_option("--out", job.out, "output path (default stdout)");
    sub->add_option("--format", job.format, "json | csv");
    if (std::string(name) == "transform") {
      sub->add_option("--op", job.op, "shift | index-shift | even-embed");
      sub->add_option("--c", job.c, "shift constant");
      sub->add_option("--ell", job.ell, "index shift amount");
    }
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);
  job.command = app.get_subcommands().front()->get_name();

  if (job.precision < 64) {
    std::cerr << "error: SchemaError: --precision must be at least 64\n";
    return 2;
  }

  try {
    return run(job);
  } catch (const Error& e) {
    json err;
    err["error"] = {{"kind", errc_name(e.code())}, {"message", e.what()}};
    std::cerr << err.dump(2) << "\n";
    return is_numerical(e.code()) ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
