#include "mdt/transform_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace mdt {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());  // nlohmann reports byte position
  }
}

Matrix matrix_from_json(const json& rows, int dim) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
    throw ParseError("A must be a dim x dim array of rows");
  }
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != dim) {
      throw ParseError("A must be a dim x dim array of rows");
    }
    for (int j = 0; j < dim; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

ordered_json matrix_to_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json breakdown_to_json(const DistortionBreakdown& b) {
  return {{"total", b.total}, {"angular", b.angular}, {"areal", b.areal}};
}

}  // namespace

TransformSet parse_transform_set(const std::string& json_text) {
  json doc = parse_json(json_text);
  try {
    const int dim = doc.at("dim").get<int>();
    if (dim < 1) throw ParseError("dim must be positive");
    TransformSet set;
    set.dim = dim;
    for (const json& e : doc.at("transforms")) {
      TransformEntry entry;
      entry.id = e.at("id").get<std::string>();
      entry.transform.linear = matrix_from_json(e.at("A"), dim);
      const json& b = e.at("b");
      if (static_cast<int>(b.size()) != dim) {
        throw ParseError("b must have length dim");
      }
      entry.transform.translation = Vector(dim);
      for (int i = 0; i < dim; ++i) entry.transform.translation(i) = b[i];
      set.entries.push_back(std::move(entry));
    }
    return set;
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

TransformSet load_transform_set(const std::string& path) {
  return parse_transform_set(read_file(path));
}

std::string serialize_transform_set(const TransformSet& set) {
  ordered_json doc;
  doc["version"] = 1;
  doc["dim"] = set.dim;
  ordered_json list = ordered_json::array();
  for (const TransformEntry& e : set.entries) {
    ordered_json b = ordered_json::array();
    for (Eigen::Index i = 0; i < e.transform.translation.size(); ++i) {
      b.push_back(e.transform.translation(i));
    }
    list.push_back({{"id", e.id},
                    {"A", matrix_to_json(e.transform.linear)},
                    {"b", std::move(b)}});
  }
  doc["transforms"] = std::move(list);
  return doc.dump(2) + "\n";
}

void save_transform_set(const TransformSet& set, const std::string& path) {
  write_file(path, serialize_transform_set(set));
}

std::vector<CorrespondenceEntry> load_correspondences(const std::string& path) {
  json doc = parse_json(read_file(path));
  try {
    std::vector<CorrespondenceEntry> out;
    for (const json& e : doc.at("correspondences")) {
      CorrespondenceEntry entry;
      entry.from_id = e.at("from_id").get<std::string>();
      entry.to_id = e.at("to_id").get<std::string>();
      for (const json& p : e.at("pairs")) {
        if (p.size() != 4) throw ParseError("pair must be [x,y,x',y']");
        entry.pairs.emplace_back(Eigen::Vector2d(p[0], p[1]),
                                 Eigen::Vector2d(p[2], p[3]));
      }
      out.push_back(std::move(entry));
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_report(const DistortionReport& report) {
  ordered_json doc;
  ordered_json list = ordered_json::array();
  for (const DistortionReport::Entry& e : report.per_image) {
    list.push_back({{"id", e.id},
                    {"before", breakdown_to_json(e.before)},
                    {"after", breakdown_to_json(e.after)}});
  }
  doc["per_image"] = std::move(list);
  doc["total_before_best_fixed"] = report.total_before_best_fixed;
  doc["total_after"] = report.total_after;
  doc["chosen_fixed_baseline"] = report.chosen_fixed_baseline;
  return doc.dump(2) + "\n";
}

std::string format_report_table(const DistortionReport& report) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "image" << std::right << std::setw(12)
     << "before" << std::setw(12) << "after" << std::setw(12) << "angular"
     << std::setw(12) << "areal" << "\n";
  os << std::string(64, '-') << "\n";
  os << std::fixed << std::setprecision(6);
  for (const DistortionReport::Entry& e : report.per_image) {
    os << std::left << std::setw(16) << e.id << std::right << std::setw(12)
       << e.before.total << std::setw(12) << e.after.total << std::setw(12)
       << e.after.angular << std::setw(12) << e.after.areal << "\n";
  }
  os << std::string(64, '-') << "\n";
  os << "total squared distortion, best fixed reference ("
     << report.chosen_fixed_baseline
     << "): " << report.total_before_best_fixed << "\n";
  os << "total squared distortion, mean distorting transform:  "
     << report.total_after << "\n";
  return os.str();
}

}  // namespace mdt
