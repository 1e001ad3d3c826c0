#include "ecf/io.hpp"

#include "ecf/rng.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ecf {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

Scalar parse_double(const std::string& text, const char* context) {
  try {
    std::size_t used = 0;
    const Scalar value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(context) + ": cannot parse number '" + text + "'");
  }
}

std::vector<std::string> labels_from_json(const Json& j, const char* context) {
  if (!j.is_array()) throw std::invalid_argument(std::string(context) + ": labels must be an array");
  std::vector<std::string> labels;
  for (const auto& item : j) {
    if (!item.is_string()) {
      throw std::invalid_argument(std::string(context) + ": labels must be strings");
    }
    labels.push_back(item.get<std::string>());
  }
  return labels;
}

SetFunction table_from_json(const GroundSet& ground, const Json& entries, const char* context,
                            bool allow_missing_empty) {
  SetFunction f(ground.size(), 0.0);
  std::vector<bool> seen(ground.subset_count(), false);
  if (!entries.is_object()) {
    throw std::invalid_argument(std::string(context) + ": table must be an object");
  }
  for (const auto& [key, value] : entries.items()) {
    const SubsetMask mask = subset_from_key(ground, key);
    if (!value.is_number()) {
      throw std::invalid_argument(std::string(context) + ": value for " + key + " must be a number");
    }
    if (seen[mask]) throw std::invalid_argument(std::string(context) + ": duplicate subset " + key);
    seen[mask] = true;
    f.set(mask, value.get<Scalar>());
  }
  for (std::size_t mask = 0; mask < ground.subset_count(); ++mask) {
    if (seen[mask]) continue;
    if (mask == 0 && allow_missing_empty) continue;
    throw std::invalid_argument(std::string(context) + ": missing subset " +
                                subset_key(ground, static_cast<SubsetMask>(mask)));
  }
  return f;
}

}  // namespace

std::string format_double(Scalar value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string subset_key(const GroundSet& ground, SubsetMask subset) {
  std::vector<std::string> members;
  for (SubsetMask rest = subset; rest != 0; rest &= rest - 1) {
    members.push_back(ground.label(lowest_site(rest)));
  }
  std::sort(members.begin(), members.end());
  return Json(members).dump();
}

SubsetMask subset_from_key(const GroundSet& ground, const std::string& key) {
  Json parsed;
  try {
    parsed = Json::parse(key);
  } catch (const Json::parse_error&) {
    throw std::invalid_argument("subset_from_key: key is not a JSON label list: " + key);
  }
  if (!parsed.is_array()) throw std::invalid_argument("subset_from_key: key must be a label list");
  SubsetMask mask = 0;
  for (const auto& item : parsed) {
    if (!item.is_string()) throw std::invalid_argument("subset_from_key: labels must be strings");
    const SubsetMask bit = singleton_mask(ground.index_of(item.get<std::string>()));
    if (mask & bit) throw std::invalid_argument("subset_from_key: duplicate label in " + key);
    mask |= bit;
  }
  return mask;
}

Json set_function_to_json(const SetFunction& f) {
  const GroundSet ground(f.num_sites());
  Json values = Json::object();
  for (std::size_t mask = 0; mask < ground.subset_count(); ++mask) {
    values[subset_key(ground, static_cast<SubsetMask>(mask))] = f(static_cast<SubsetMask>(mask));
  }
  return Json{{"m", f.num_sites()}, {"values", values}};
}

SetFunction set_function_from_json(const Json& j) {
  if (!j.contains("m") || !j["m"].is_number_integer()) {
    throw std::invalid_argument("set_function_from_json: missing integer field 'm'");
  }
  const int m = j["m"].get<int>();
  if (m < 1 || m > kMaxSites) throw std::invalid_argument("set_function_from_json: m out of range");
  if (!j.contains("values")) throw std::invalid_argument("set_function_from_json: missing 'values'");
  return table_from_json(GroundSet(m), j["values"], "set_function_from_json",
                         /*allow_missing_empty=*/false);
}

Json ecf_to_json(const EcfTable& ecf) {
  Json theta = Json::object();
  const SubsetMask full = ecf.ground.all_sites();
  for (SubsetMask subset = 1; subset <= full; ++subset) {
    theta[subset_key(ecf.ground, subset)] = ecf.theta(subset);
  }
  return Json{{"labels", ecf.ground.labels()}, {"theta", theta}};
}

EcfTable ecf_from_json(const Json& j) {
  if (!j.contains("labels")) throw std::invalid_argument("ecf_from_json: missing 'labels'");
  if (!j.contains("theta")) throw std::invalid_argument("ecf_from_json: missing 'theta'");
  GroundSet ground(labels_from_json(j["labels"], "ecf_from_json"));
  SetFunction theta =
      table_from_json(ground, j["theta"], "ecf_from_json", /*allow_missing_empty=*/true);
  return EcfTable(std::move(ground), std::move(theta));
}

Json tau_to_json(const TauTable& tau) {
  Json values = Json::object();
  const SubsetMask full = tau.ground.all_sites();
  for (SubsetMask subset = 1; subset <= full; ++subset) {
    values[subset_key(tau.ground, subset)] = tau(subset);
  }
  return Json{{"labels", tau.ground.labels()}, {"tau", values}};
}

TauTable tau_from_json(const Json& j) {
  if (!j.contains("labels")) throw std::invalid_argument("tau_from_json: missing 'labels'");
  if (!j.contains("tau")) throw std::invalid_argument("tau_from_json: missing 'tau'");
  GroundSet ground(labels_from_json(j["labels"], "tau_from_json"));
  SetFunction tau = table_from_json(ground, j["tau"], "tau_from_json", /*allow_missing_empty=*/true);
  return TauTable(std::move(ground), std::move(tau));
}

Json polytope_to_json(const DepSetPolytope& poly) {
  Json halfspaces = Json::array();
  for (const Halfspace& half : poly.halfspaces) {
    std::vector<std::string> members;
    for (SubsetMask rest = half.subset; rest != 0; rest &= rest - 1) {
      members.push_back(poly.ground.label(lowest_site(rest)));
    }
    std::sort(members.begin(), members.end());
    halfspaces.push_back(Json{{"A", members}, {"b", half.bound}});
  }
  Json vertices = Json::array();
  for (const Vector& vertex : poly.vertices) {
    Json row = Json::array();
    for (Eigen::Index i = 0; i < vertex.size(); ++i) row.push_back(vertex[i]);
    vertices.push_back(row);
  }
  return Json{{"labels", poly.ground.labels()}, {"halfspaces", halfspaces}, {"vertices", vertices}};
}

Json bernstein_to_json(const BernsteinFunction& g) {
  switch (g.kind()) {
    case BernsteinFunction::Kind::kAffine:
      return Json{{"kind", "affine"}, {"c", g.c()}, {"b", g.b()}};
    case BernsteinFunction::Kind::kLog1p:
      return Json{{"kind", "log1p"}};
    case BernsteinFunction::Kind::kPower:
      return Json{{"kind", "power"}, {"alpha", g.alpha()}};
    case BernsteinFunction::Kind::kNegPower:
      return Json{{"kind", "negpower"}, {"alpha", g.alpha()}};
    case BernsteinFunction::Kind::kExpMixture: {
      Json atoms = Json::array();
      for (const auto& [weight, rate] : g.atoms()) {
        atoms.push_back(Json{{"w", weight}, {"lambda", rate}});
      }
      return Json{{"kind", "expmixture"}, {"c", g.c()}, {"b", g.b()}, {"atoms", atoms}};
    }
  }
  throw std::logic_error("bernstein_to_json: unknown kind");
}

BernsteinFunction bernstein_from_json(const Json& j) {
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw std::invalid_argument("bernstein_from_json: missing 'kind'");
  }
  const std::string kind = j["kind"].get<std::string>();
  const auto number = [&](const char* field) {
    if (!j.contains(field) || !j[field].is_number()) {
      throw std::invalid_argument(std::string("bernstein_from_json: missing number '") + field + "'");
    }
    return j[field].get<Scalar>();
  };
  if (kind == "affine") return BernsteinFunction::affine(number("c"), number("b"));
  if (kind == "log1p") return BernsteinFunction::log1p();
  if (kind == "power") return BernsteinFunction::power(number("alpha"));
  if (kind == "negpower") return BernsteinFunction::neg_power(number("alpha"));
  if (kind == "expmixture") {
    std::vector<std::pair<Scalar, Scalar>> atoms;
    if (j.contains("atoms")) {
      for (const auto& atom : j["atoms"]) {
        atoms.emplace_back(atom.at("w").get<Scalar>(), atom.at("lambda").get<Scalar>());
      }
    }
    return BernsteinFunction::exp_mixture(number("c"), number("b"), std::move(atoms));
  }
  throw std::invalid_argument("bernstein_from_json: unknown kind '" + kind + "'");
}

BernsteinFunction parse_bernstein(const std::string& text) {
  if (text == "log1p") return BernsteinFunction::log1p();
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "pow") return BernsteinFunction::power(parse_double(rest, "parse_bernstein"));
  if (head == "negpow") return BernsteinFunction::neg_power(parse_double(rest, "parse_bernstein"));
  if (head == "affine") {
    const auto fields = split_csv_line(rest);
    if (fields.size() != 2) throw std::invalid_argument("parse_bernstein: affine needs c,b");
    return BernsteinFunction::affine(parse_double(fields[0], "parse_bernstein"),
                                     parse_double(fields[1], "parse_bernstein"));
  }
  if (head == "mix") {
    // mix:c,b,[w:lambda,...]
    const auto bracket = rest.find('[');
    if (bracket == std::string::npos || rest.back() != ']') {
      throw std::invalid_argument("parse_bernstein: mix needs c,b,[w:lambda,...]");
    }
    const auto prefix = split_csv_line(rest.substr(0, bracket));
    if (prefix.size() < 2) throw std::invalid_argument("parse_bernstein: mix needs c,b");
    const Scalar c = parse_double(prefix[0], "parse_bernstein");
    const Scalar b = parse_double(prefix[1], "parse_bernstein");
    std::vector<std::pair<Scalar, Scalar>> atoms;
    const std::string body = rest.substr(bracket + 1, rest.size() - bracket - 2);
    if (!body.empty()) {
      for (const std::string& item : split_csv_line(body)) {
        const auto sep = item.find(':');
        if (sep == std::string::npos) {
          throw std::invalid_argument("parse_bernstein: mixture atom needs w:lambda");
        }
        atoms.emplace_back(parse_double(item.substr(0, sep), "parse_bernstein"),
                           parse_double(item.substr(sep + 1), "parse_bernstein"));
      }
    }
    return BernsteinFunction::exp_mixture(c, b, std::move(atoms));
  }
  throw std::invalid_argument("parse_bernstein: unknown shorthand '" + text + "'");
}

std::string spectral_measure_to_csv(const DiscreteSpectralMeasure& sm) {
  std::string out = "site";
  for (int j = 1; j <= sm.num_atoms(); ++j) out += ",a" + std::to_string(j);
  out += "\n";
  for (int i = 0; i < sm.num_sites(); ++i) {
    out += sm.ground().label(i);
    for (int j = 0; j < sm.num_atoms(); ++j) out += "," + format_double(sm.atoms()(i, j));
    out += "\n";
  }
  return out;
}

DiscreteSpectralMeasure spectral_measure_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("spectral_measure_from_csv: empty input");
  const auto header = split_csv_line(line);
  if (header.empty() || header[0] != "site") {
    throw std::invalid_argument("spectral_measure_from_csv: header must start with 'site'");
  }
  const std::size_t q = header.size() - 1;
  if (q < 1) throw std::invalid_argument("spectral_measure_from_csv: no atom columns");
  std::vector<std::string> labels;
  std::vector<Scalar> entries;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw std::invalid_argument("spectral_measure_from_csv: row width mismatch");
    }
    labels.push_back(fields[0]);
    for (std::size_t j = 1; j < fields.size(); ++j) {
      entries.push_back(parse_double(fields[j], "spectral_measure_from_csv"));
    }
  }
  if (labels.empty()) throw std::invalid_argument("spectral_measure_from_csv: no site rows");
  Matrix atoms(static_cast<Eigen::Index>(labels.size()), static_cast<Eigen::Index>(q));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      atoms(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entries[i * q + j];
    }
  }
  return DiscreteSpectralMeasure(GroundSet(std::move(labels)), std::move(atoms));
}

std::string sample_batch_to_csv(const SampleBatch& batch) {
  std::string out;
  for (int i = 0; i < batch.ground.size(); ++i) {
    if (i > 0) out += ",";
    out += batch.ground.label(i);
  }
  out += "\n";
  for (Eigen::Index k = 0; k < batch.values.rows(); ++k) {
    for (Eigen::Index i = 0; i < batch.values.cols(); ++i) {
      if (i > 0) out += ",";
      out += format_double(batch.values(k, i));
    }
    out += "\n";
  }
  return out;
}

SampleBatch sample_batch_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("sample_batch_from_csv: empty input");
  const auto labels = split_csv_line(line);
  if (labels.empty()) throw std::invalid_argument("sample_batch_from_csv: empty header");
  std::vector<Scalar> entries;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != labels.size()) {
      throw std::invalid_argument("sample_batch_from_csv: row width mismatch");
    }
    for (const std::string& field : fields) {
      entries.push_back(parse_double(field, "sample_batch_from_csv"));
    }
    ++rows;
  }
  if (rows == 0) throw std::invalid_argument("sample_batch_from_csv: no replicate rows");
  Matrix values(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(labels.size()));
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) =
          entries[k * labels.size() + i];
    }
  }
  return SampleBatch{GroundSet(labels), std::move(values), 0};
}

Json sample_metadata(const SampleBatch& batch) {
  return Json{{"n", batch.n()}, {"seed", batch.seed}, {"generator", kGeneratorId}};
}

GroundSet sites_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("sites_from_csv: empty input");
  const auto header = split_csv_line(line);
  if (header.empty() || header[0] != "label") {
    throw std::invalid_argument("sites_from_csv: header must start with 'label'");
  }
  const std::size_t dim = header.size() - 1;
  std::vector<std::string> labels;
  std::vector<Scalar> entries;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw std::invalid_argument("sites_from_csv: row width mismatch");
    }
    labels.push_back(fields[0]);
    for (std::size_t j = 1; j < fields.size(); ++j) {
      entries.push_back(parse_double(fields[j], "sites_from_csv"));
    }
  }
  if (labels.empty()) throw std::invalid_argument("sites_from_csv: no site rows");
  if (dim == 0) return GroundSet(std::move(labels));
  Matrix coords(static_cast<Eigen::Index>(labels.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      coords(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entries[i * dim + j];
    }
  }
  return GroundSet(std::move(labels), std::move(coords));
}

std::string sites_to_csv(const GroundSet& ground) {
  const int dim = ground.has_coords() ? static_cast<int>(ground.coords().cols()) : 0;
  std::string out = "label";
  for (int j = 1; j <= dim; ++j) out += ",x" + std::to_string(j);
  out += "\n";
  for (int i = 0; i < ground.size(); ++i) {
    out += ground.label(i);
    for (int j = 0; j < dim; ++j) out += "," + format_double(ground.coords()(i, j));
    out += "\n";
  }
  return out;
}

std::string vertices_to_csv(const DepSetPolytope& poly) {
  std::string out;
  for (int i = 0; i < poly.ground.size(); ++i) {
    if (i > 0) out += ",";
    out += poly.ground.label(i);
  }
  out += "\n";
  for (const Vector& vertex : poly.vertices) {
    for (Eigen::Index i = 0; i < vertex.size(); ++i) {
      if (i > 0) out += ",";
      out += format_double(vertex[i]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace ecf
