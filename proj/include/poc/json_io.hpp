#pragma once

// JSON (de)serialization for datasets and bound reports.
//
// Dataset files:
//   {"n_treatments": N, "n_outcomes": M,
//    "experimental": [[...], ...], "observational": [[...], ...],
//    "counts": false}
// Generated files may carry extra keys ("generator", "seed", "n"); readers
// ignore them.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "poc/bounds.hpp"
#include "poc/dist.hpp"
#include "poc/error.hpp"

namespace poc {

using Json = nlohmann::ordered_json;

inline RawDataset raw_from_json(const Json& j) {
  try {
    RawDataset raw;
    raw.experimental = j.at("experimental").get<std::vector<std::vector<double>>>();
    raw.observational = j.at("observational").get<std::vector<std::vector<double>>>();
    raw.counts = j.value("counts", false);
    auto check_dim = [&](const char* key, std::size_t actual) {
      if (j.contains(key) && j.at(key).get<std::size_t>() != actual) {
        throw Error(ErrorKind::ShapeMismatch, std::string(key) + " disagrees with the tables");
      }
    };
    check_dim("n_treatments", raw.experimental.size());
    if (!raw.experimental.empty()) check_dim("n_outcomes", raw.experimental.front().size());
    return raw;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SyntaxError, std::string("dataset JSON: ") + e.what());
  }
}

inline Dataset dataset_from_json(const Json& j, double tol = kDefaultTol) {
  return validate_dataset(raw_from_json(j), tol);
}

inline Json dataset_to_json(const Dataset& ds) {
  const Dims& d = ds.dims();
  Json j;
  j["n_treatments"] = d.n_treatments;
  j["n_outcomes"] = d.n_outcomes;
  Json e = Json::array(), o = Json::array();
  for (std::size_t t = 0; t < d.n_treatments; ++t) {
    Json er = Json::array(), orow = Json::array();
    for (std::size_t c = 0; c < d.n_outcomes; ++c) {
      er.push_back(ds.exp(t, c));
      orow.push_back(ds.obs(t, c));
    }
    e.push_back(std::move(er));
    o.push_back(std::move(orow));
  }
  j["experimental"] = std::move(e);
  j["observational"] = std::move(o);
  j["counts"] = false;
  return j;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Dataset load_dataset(const std::filesystem::path& path, double tol = kDefaultTol) {
  const std::string text = read_text_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, path.string() + ": " + e.what());
  }
  return dataset_from_json(j, tol);
}

/// Writes to a sibling temporary and renames, so readers never observe a
/// partial file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::IoError, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::IoError, "cannot rename into " + path.string());
  }
}

inline Json report_to_json(const BoundReport& r) {
  Json j;
  j["family"] = std::string(to_string(r.family));
  j["lower"] = r.interval.lower;
  j["upper"] = r.interval.upper;
  j["active_lower"] = r.active_lower;
  j["active_upper"] = r.active_upper;
  Json lower = Json::object(), upper = Json::object();
  for (const Candidate& c : r.lower_candidates) lower[c.label] = c.value;
  for (const Candidate& c : r.upper_candidates) upper[c.label] = c.value;
  j["candidates"] = {{"lower", std::move(lower)}, {"upper", std::move(upper)}};
  j["denominator"] = r.denominator ? Json(*r.denominator) : Json(nullptr);
  if (r.denominator) j["joint"] = {{"lower", r.joint.lower}, {"upper", r.joint.upper}};
  j["infeasible"] = r.infeasible;
  return j;
}

inline Json interval_to_json(const Interval& iv) { return Json{{"lower", iv.lower}, {"upper", iv.upper}}; }

}  // namespace poc
