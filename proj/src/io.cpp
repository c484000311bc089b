#include "alphadpp/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

namespace alphadpp {

using nlohmann::json;

std::string format_real(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

BasisIndex basis_index_from_string(int level, const std::string& s) {
  return BasisIndex(level, TreeIndex::parse(s));
}

Window window_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw contract_error("config: window must be [a, b]");
  Window w{j[0].get<Real>(), j[1].get<Real>()};
  if (!(w.b > w.a)) throw contract_error("config: window must satisfy a < b");
  return w;
}

AlphaParam alpha_from_json(const json& j) {
  if (j.is_string()) return AlphaParam::parse(j.get<std::string>());
  if (j.is_number_integer()) return AlphaParam::of(j.get<std::int64_t>(), 1);
  if (j.is_number()) return AlphaParam::from_value(j.get<Real>());
  throw contract_error("config: alpha must be a string or number");
}

MatrixXc matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw contract_error("config: matrix must be a non-empty array");
  const auto n = static_cast<int>(j.size());
  MatrixXc A(n, n);
  for (int r = 0; r < n; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != n)
      throw contract_error("config: matrix must be square");
    for (int c = 0; c < n; ++c) {
      const json& e = j[r][c];
      if (e.is_number()) {
        A(r, c) = Complex(e.get<Real>(), 0.0);
      } else if (e.is_array() && e.size() == 2) {
        A(r, c) = Complex(e[0].get<Real>(), e[1].get<Real>());
      } else {
        throw contract_error("config: matrix entries must be numbers or [re, im]");
      }
    }
  }
  return A;
}

}  // namespace

KernelSpec kernel_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw contract_error("config: kernel must be an object with a 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rank-one-indicator") {
    const json& s = j.at("support");
    return KernelSpec::rank_one_indicator({s.at(0).get<Real>(), s.at(1).get<Real>()},
                                          j.value("weight", 1.0));
  }
  if (kind == "finite-rank") {
    const int level = j.at("level").get<int>();
    std::vector<FiniteRankMode> modes;
    for (const json& mj : j.at("modes")) {
      FiniteRankMode mode;
      mode.eigenvalue = mj.at("eigenvalue").get<Real>();
      for (const auto& [key, val] : mj.at("coefficients").items())
        mode.coefficients.emplace_back(basis_index_from_string(level, key), val.get<Real>());
      modes.push_back(std::move(mode));
    }
    return KernelSpec::finite_rank(level, std::move(modes));
  }
  if (kind == "gaussian")
    return KernelSpec::gaussian(j.at("gamma").get<Real>(), j.value("amplitude", 1.0));
  if (kind == "sine-window") return KernelSpec::sine_window(j.at("band").get<Real>());
  throw contract_error("config: unknown kernel kind '" + kind + "'");
}

json kernel_to_json(const KernelSpec& k) {
  json j;
  switch (k.kind()) {
    case KernelKind::RankOneIndicator:
      j["kind"] = "rank-one-indicator";
      j["support"] = {k.support().lo, k.support().hi};
      j["weight"] = k.weight();
      break;
    case KernelKind::FiniteRank: {
      j["kind"] = "finite-rank";
      j["level"] = k.mode_level();
      json modes = json::array();
      for (const auto& m : k.modes()) {
        json mj;
        mj["eigenvalue"] = m.eigenvalue;
        json coeffs;
        for (const auto& [idx, c] : m.coefficients) coeffs[idx.str()] = c;
        mj["coefficients"] = coeffs;
        modes.push_back(mj);
      }
      j["modes"] = modes;
      break;
    }
    case KernelKind::Gaussian:
      j["kind"] = "gaussian";
      j["gamma"] = k.gamma();
      j["amplitude"] = k.amplitude();
      break;
    case KernelKind::SineWindow:
      j["kind"] = "sine-window";
      j["band"] = k.band();
      break;
  }
  return j;
}

ExperimentConfig parse_config(const json& j) {
  ExperimentConfig cfg;
  if (!j.is_object()) throw contract_error("config: top level must be an object");
  for (const auto& [key, val] : j.items()) {
    if (key == "kernel") cfg.kernel = kernel_from_json(val);
    else if (key == "alpha") cfg.alpha = alpha_from_json(val);
    else if (key == "level") cfg.level = val.get<int>();
    else if (key == "rank") cfg.max_rank = val.get<int>();
    else if (key == "window") cfg.window = window_from_json(val);
    else if (key == "quadrature") {
      cfg.quad.order = val.value("order", cfg.quad.order);
      cfg.quad.refinement_level = val.value("refinement_level", cfg.quad.refinement_level);
    } else if (key == "query") {
      CorrelationQuery q;
      for (const json& c : val.at("cells")) q.cells.push_back(TreeIndex::parse(c.get<std::string>()));
      if (val.contains("m") && val.at("m").get<int>() != q.order())
        throw contract_error("config: query.m disagrees with the cell list length");
      cfg.query = std::move(q);
    } else if (key == "samples") cfg.n_samples = val.get<std::int64_t>();
    else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
    else if (key == "tolerance") cfg.tolerance = val.get<Real>();
    else if (key == "grid_n") cfg.grid_n = val.get<int>();
    else if (key == "matrix") cfg.matrix = matrix_from_json(val);
    else throw contract_error("config: unknown key '" + key + "'");
  }
  if (cfg.level < 1 || cfg.level > 40) throw contract_error("config: level out of [1, 40]");
  if (cfg.max_rank < 1 || cfg.max_rank > 20) throw contract_error("config: rank out of [1, 20]");
  if (cfg.n_samples < 1) throw contract_error("config: samples must be positive");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw contract_error("config: invalid JSON in '" + path + "': " + e.what());
  }
  return parse_config(j);
}

json projected_to_json(const ProjectedKernel& proj) {
  json j;
  j["level"] = proj.level;
  j["rank"] = proj.max_rank;
  j["window"] = {proj.window.a, proj.window.b};
  j["kernel_trace"] = proj.kernel_trace;
  j["tail_trace"] = proj.tail_trace();
  json labels = json::array();
  for (const BasisIndex& i : proj.indices) labels.push_back(i.str());
  j["indices"] = labels;
  json rows = json::array();
  for (int r = 0; r < proj.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < proj.dim(); ++c)
      row.push_back({proj.matrix(r, c).real(), proj.matrix(r, c).imag()});
    rows.push_back(row);
  }
  j["matrix"] = rows;
  return j;
}

std::string projected_to_csv(const ProjectedKernel& proj) {
  std::ostringstream os;
  os << "i,j,re,im\n";
  for (int r = 0; r < proj.dim(); ++r)
    for (int c = 0; c < proj.dim(); ++c)
      os << proj.indices[r].str() << ',' << proj.indices[c].str() << ','
         << format_real(proj.matrix(r, c).real()) << ',' << format_real(proj.matrix(r, c).imag())
         << '\n';
  return os.str();
}

json parseval_to_json(const ParsevalReport& r) {
  json j;
  j["m"] = r.m;
  j["level"] = r.level;
  j["rank"] = r.max_rank;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["gap"] = r.gap;
  j["tail_bound"] = r.tail_bound;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  return j;
}

std::string parseval_to_csv(const ParsevalReport& r) {
  std::ostringstream os;
  os << "m,level,rank,lhs,rhs,gap,tail_bound,tolerance,pass\n";
  os << r.m << ',' << r.level << ',' << r.max_rank << ',' << format_real(r.lhs) << ','
     << format_real(r.rhs) << ',' << format_real(r.gap) << ',' << format_real(r.tail_bound) << ','
     << format_real(r.tolerance) << ',' << (r.pass ? 1 : 0) << '\n';
  return os.str();
}

json lift_to_json(const LiftReport& r) {
  json j;
  j["m"] = r.m;
  j["alpha"] = r.alpha;
  j["level"] = r.level;
  j["rank"] = r.max_rank;
  j["n_samples"] = r.n_samples;
  j["seed"] = r.seed;
  j["analytic"] = r.analytic;
  j["discrete_rhs"] = r.discrete_rhs;
  j["truncation_gap"] = r.truncation_gap;
  j["empirical"] = r.empirical;
  j["std_error"] = r.std_error;
  j["pass"] = r.pass;
  return j;
}

std::string lift_to_csv(const LiftReport& r) {
  std::ostringstream os;
  os << "m,alpha,level,rank,n_samples,seed,analytic,discrete_rhs,truncation_gap,empirical,"
        "std_error,pass\n";
  os << r.m << ',' << r.alpha << ',' << r.level << ',' << r.max_rank << ',' << r.n_samples << ','
     << r.seed << ',' << format_real(r.analytic) << ',' << format_real(r.discrete_rhs) << ','
     << format_real(r.truncation_gap) << ',' << format_real(r.empirical) << ','
     << format_real(r.std_error) << ',' << (r.pass ? 1 : 0) << '\n';
  return os.str();
}

json spectrum_to_json(const SpectrumReport& r) {
  json j;
  json pe = json::array(), ne = json::array();
  for (int i = 0; i < r.projected.size(); ++i) pe.push_back(r.projected[i]);
  for (int i = 0; i < r.nystrom.size(); ++i) ne.push_back(r.nystrom[i]);
  j["projected"] = pe;
  j["nystrom"] = ne;
  j["hausdorff"] = r.hausdorff;
  j["floor"] = r.floor;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  return j;
}

std::string spectrum_to_csv(const SpectrumReport& r) {
  std::ostringstream os;
  os << "source,position,eigenvalue\n";
  for (int i = 0; i < r.projected.size(); ++i)
    os << "projected," << i << ',' << format_real(r.projected[i]) << '\n';
  for (int i = 0; i < r.nystrom.size(); ++i)
    os << "nystrom," << i << ',' << format_real(r.nystrom[i]) << '\n';
  return os.str();
}

std::string sample_to_json_line(const LiftedConfiguration& lifted,
                                const std::vector<std::int64_t>& counts) {
  json j;
  json idx = json::array(), pts = json::array(), cts = json::array();
  for (const BasisIndex& i : lifted.indices) idx.push_back(i.str());
  for (Real p : lifted.points) pts.push_back(p);
  for (std::int64_t c : counts) cts.push_back(c);
  j["counts"] = cts;
  j["indices"] = idx;
  j["points"] = pts;
  return j.dump();
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

void emit_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw io_error("failed writing output file '" + path + "'");
}

}  // namespace alphadpp
