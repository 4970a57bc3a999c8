#include "opdiff/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace opdiff {

namespace {

using nlohmann::json;

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

TruncatedSeries series_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty())
    throw spec_error("field '" + field + "' must be a nonempty array of [re, im] pairs");
  std::vector<cxd> coeffs;
  coeffs.reserve(j.size());
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
      throw spec_error("field '" + field + "': every coefficient must be a [re, im] number pair");
    coeffs.emplace_back(item[0].get<double>(), item[1].get<double>());
  }
  return TruncatedSeries(std::move(coeffs));
}

}  // namespace

std::string double_str(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string complex_str(cxd z) {
  return "[" + double_str(z.real()) + ", " + double_str(z.imag()) + "]";
}

std::string series_to_json(const TruncatedSeries& s) {
  std::string out = "[";
  for (int k = 0; k <= s.trunc_degree(); ++k) {
    if (k) out += ", ";
    out += complex_str(s.coeff(k));
  }
  return out + "]";
}

TruncatedSeries series_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw spec_error(std::string("series JSON parse error: ") + e.what());
  }
  return series_from_json(j, "series");
}

OperatorSpec parse_spec_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw spec_error(std::string("operator spec parse error: ") + e.what());
  }
  if (!j.is_object()) throw spec_error("operator spec must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "psi0" && key != "phi0" && key != "psin" && key != "phin" && key != "n")
      throw spec_error("unknown field '" + key + "' in operator spec");
  }

  OperatorSpec spec;
  const bool has_psi0 = j.contains("psi0"), has_phi0 = j.contains("phi0");
  if (has_psi0 != has_phi0) throw spec_error("psi0 and phi0 must be given together");
  if (has_psi0)
    spec.comp = OperatorSpec::CompPart{series_from_json(j["psi0"], "psi0"),
                                       series_from_json(j["phi0"], "phi0")};

  const bool has_psin = j.contains("psin"), has_phin = j.contains("phin"), has_n = j.contains("n");
  if (has_psin != has_phin || has_psin != has_n)
    throw spec_error("psin, phin and n must be given together");
  if (has_psin) {
    if (!j["n"].is_number_integer() || j["n"].get<long>() < 1)
      throw spec_error("n must be a positive integer");
    spec.diff = OperatorSpec::DiffPart{series_from_json(j["psin"], "psin"),
                                       series_from_json(j["phin"], "phin"),
                                       static_cast<int>(j["n"].get<long>())};
  }
  spec.validate_shape();
  return spec;
}

OperatorSpec load_spec_file(const std::string& path) {
  return parse_spec_json(read_text_file(path));
}

std::string spec_to_json(const OperatorSpec& spec) {
  std::string out = "{";
  bool first = true;
  if (spec.comp) {
    out += "\"psi0\": " + series_to_json(spec.comp->psi);
    out += ", \"phi0\": " + series_to_json(spec.comp->phi);
    first = false;
  }
  if (spec.diff) {
    if (!first) out += ", ";
    out += "\"psin\": " + series_to_json(spec.diff->psi);
    out += ", \"phin\": " + series_to_json(spec.diff->phi);
    out += ", \"n\": " + std::to_string(spec.diff->order);
  }
  return out + "}";
}

std::string spectrum_report_json(const SpectrumReport& rep) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"alpha\": " << double_str(rep.alpha) << ",\n";
  os << "  \"trunc_degree\": " << rep.trunc_degree << ",\n";
  os << "  \"radius_closed\": " << double_str(rep.radius_closed) << ",\n";
  os << "  \"l_star\": " << rep.l_star << ",\n";
  os << "  \"tie\": " << (rep.tie ? "true" : "false") << ",\n";
  os << "  \"conjugated\": " << (rep.conjugated ? "true" : "false") << ",\n";
  os << "  \"closed_form\": [";
  for (size_t i = 0; i < rep.closed_form.size(); ++i) {
    if (i) os << ", ";
    os << "{\"l\": " << rep.closed_form[i].l << ", \"value\": " << complex_str(rep.closed_form[i].value)
       << "}";
  }
  os << "],\n";
  os << "  \"numeric\": [";
  for (size_t i = 0; i < rep.numeric.size(); ++i) {
    if (i) os << ", ";
    os << "{\"value\": " << complex_str(rep.numeric[i].value)
       << ", \"residual\": " << double_str(rep.numeric[i].residual)
       << ", \"flagged\": " << (rep.numeric[i].flagged ? "true" : "false") << "}";
  }
  os << "]\n}\n";
  return os.str();
}

std::string spectrum_report_csv(const SpectrumReport& rep) {
  std::ostringstream os;
  os << "kind,l,re,im,residual\n";
  for (const auto& cf : rep.closed_form)
    os << "closed," << cf.l << "," << double_str(cf.value.real()) << ","
       << double_str(cf.value.imag()) << ",\n";
  for (const auto& p : rep.numeric)
    os << "numeric,," << double_str(p.value.real()) << "," << double_str(p.value.imag()) << ","
       << double_str(p.residual) << "\n";
  return os.str();
}

namespace {

std::string optional_double(const std::optional<double>& v) {
  return v ? double_str(*v) : std::string("null");
}

}  // namespace

std::string norm_report_json(const NormReport& rep) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"lower\": " << optional_double(rep.lower) << ",\n";
  os << "  \"upper\": " << optional_double(rep.upper) << ",\n";
  os << "  \"exact\": " << optional_double(rep.exact) << ",\n";
  os << "  \"numeric\": " << double_str(rep.numeric) << ",\n";
  os << "  \"method_tags\": {";
  for (size_t i = 0; i < rep.method_tags.size(); ++i) {
    if (i) os << ", ";
    os << "\"" << json_escape(rep.method_tags[i].first) << "\": \""
       << json_escape(rep.method_tags[i].second) << "\"";
  }
  os << "}\n}\n";
  return os.str();
}

std::string norm_report_csv(const NormReport& rep) {
  std::ostringstream os;
  os << "lower,upper,exact,numeric\n";
  os << (rep.lower ? double_str(*rep.lower) : "") << "," << (rep.upper ? double_str(*rep.upper) : "")
     << "," << (rep.exact ? double_str(*rep.exact) : "") << "," << double_str(rep.numeric) << "\n";
  return os.str();
}

std::string verification_reports_json(const std::vector<VerificationReport>& reps) {
  std::ostringstream os;
  os << "[\n";
  for (size_t i = 0; i < reps.size(); ++i) {
    const VerificationReport& r = reps[i];
    os << "  {\"case\": \"" << json_escape(r.case_id) << "\", \"theorem\": \""
       << json_escape(r.theorem) << "\", \"residual\": " << double_str(r.residual)
       << ", \"tolerance\": " << double_str(r.tolerance)
       << ", \"pass\": " << (r.pass ? "true" : "false")
       << ", \"runtime_sec\": " << double_str(r.runtime_sec) << ", \"note\": \""
       << json_escape(r.note) << "\"}";
    if (i + 1 < reps.size()) os << ",";
    os << "\n";
  }
  os << "]\n";
  return os.str();
}

std::string verification_reports_csv(const std::vector<VerificationReport>& reps) {
  std::ostringstream os;
  os << "case,theorem,residual,tolerance,pass\n";
  for (const VerificationReport& r : reps)
    os << r.case_id << "," << r.theorem << "," << double_str(r.residual) << ","
       << double_str(r.tolerance) << "," << (r.pass ? "true" : "false") << "\n";
  return os.str();
}

void write_matrix_csv(std::ostream& os, const OperatorMatrix& M) {
  const Eigen::Index n = M.entries.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j) os << ",";
      os << "\"" << double_str(M.entries(i, j).real()) << "," << double_str(M.entries(i, j).imag())
         << "\"";
    }
    os << "\n";
  }
}

std::string matrix_json(const OperatorMatrix& M) {
  std::ostringstream os;
  os << "{\n  \"alpha\": " << double_str(M.alpha) << ",\n  \"trunc_degree\": " << M.trunc_degree
     << ",\n  \"entries\": [\n";
  const Eigen::Index n = M.entries.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    os << "    [";
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j) os << ", ";
      os << complex_str(M.entries(i, j));
    }
    os << (i + 1 < n ? "],\n" : "]\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

std::vector<VerificationCase> load_suite_manifest(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw spec_error(std::string("suite manifest parse error: ") + e.what());
  }
  if (!j.is_array()) throw spec_error("suite manifest must be a JSON array of cases");

  std::vector<VerificationCase> cases;
  for (const auto& c : j) {
    if (!c.is_object() || !c.contains("id") || !c.contains("kind"))
      throw spec_error("every manifest case needs 'id' and 'kind'");
    const std::string id = c["id"].get<std::string>();
    const std::string kind = c["kind"].get<std::string>();
    const double alpha = c.value("alpha", -1.0);
    const int trunc = c.value("trunc", 128);

    if (kind == "adjoint") {
      const OperatorSpec spec = parse_spec_json(c.at("spec").dump());
      const int m = c.value("m", 3);
      cxd w(0.0);
      if (c.contains("w")) w = cxd(c["w"][0].get<double>(), c["w"][1].get<double>());
      cases.push_back({id, [spec, w, m, alpha, trunc] {
                         return check_adjoint_expansion(spec, w, m, alpha, trunc).first;
                       }});
    } else if (kind == "spectrum") {
      const OperatorSpec spec = parse_spec_json(c.at("spec").dump());
      const int top_k = c.value("top_k", 10);
      cases.push_back(
          {id, [spec, alpha, trunc, top_k] { return check_spectrum_match(spec, alpha, trunc, top_k); }});
    } else if (kind == "factorization") {
      const TruncatedSeries phi = series_from_json(c.at("phi"), "phi");
      cases.push_back({id, [phi, alpha, trunc] { return check_factorization(phi, alpha, trunc); }});
    } else if (kind == "norm_convergence") {
      const OperatorSpec spec = parse_spec_json(c.at("spec").dump());
      std::vector<int> grid;
      for (const auto& g : c.at("grid")) grid.push_back(g.get<int>());
      cases.push_back(
          {id, [spec, alpha, grid] { return check_norm_convergence(spec, alpha, grid); }});
    } else if (kind == "reproducing") {
      std::vector<double> alphas;
      for (const auto& a : c.at("alphas")) alphas.push_back(a.get<double>());
      cases.push_back({id, [alphas, trunc] { return check_reproducing(alphas, trunc); }});
    } else {
      throw spec_error("unknown case kind '" + kind + "'");
    }
  }
  return cases;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw spec_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw spec_error("cannot write file: " + path);
  out << content;
}

}  // namespace opdiff
