#include "lorentz/causet_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace lorentz {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse, where + ": bad number '" + text + "'");
  }
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                               const std::string& header) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) {
    throw Error(ErrorCode::kParse, path.string() + ": header must be exactly '" + header + "'");
  }
  const std::size_t columns = split_csv_line(header).size();
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != columns) {
      throw Error(ErrorCode::kParse,
                  path.string() + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(columns) + " fields");
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + tmp.string());
    out << contents;
    if (!out) throw Error(ErrorCode::kInvalidArgument, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

nlohmann::json causet_to_json(const CausalSetSpace& space) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : space.vertices()) j["vertices"].push_back({{"id", v.id}, {"T", v.time}});
  j["edges"] = nlohmann::json::array();
  for (const auto& e : space.edges()) {
    j["edges"].push_back({{"src", e.src}, {"dst", e.dst}, {"tau", e.tau}});
  }
  return j;
}

CausalSetSpace causet_from_json(const nlohmann::json& j, Execution exec) {
  try {
    std::vector<VertexSpec> vertices;
    for (const auto& v : j.at("vertices")) {
      vertices.push_back(VertexSpec{v.at("id").get<std::string>(), v.at("T").get<double>()});
    }
    std::vector<EdgeSpec> edges;
    for (const auto& e : j.at("edges")) {
      edges.push_back(EdgeSpec{e.at("src").get<std::string>(), e.at("dst").get<std::string>(),
                               e.at("tau").get<double>()});
    }
    return CausalSetSpace(std::move(vertices), std::move(edges), exec);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParse, std::string("causal set JSON: ") + ex.what());
  }
}

CausalSetSpace load_causet_json(const std::filesystem::path& path, Execution exec) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParse, path.string() + ": " + ex.what());
  }
  return causet_from_json(j, exec);
}

void save_causet_json(const CausalSetSpace& space, const std::filesystem::path& path) {
  write_file_atomically(path, causet_to_json(space).dump(2) + "\n");
}

CausalSetSpace load_causet_csv(const std::filesystem::path& vertices_csv,
                               const std::filesystem::path& edges_csv, Execution exec) {
  std::vector<VertexSpec> vertices;
  for (auto& row : read_csv(vertices_csv, "id,T")) {
    vertices.push_back(VertexSpec{row[0], parse_double(row[1], vertices_csv.string())});
  }
  std::vector<EdgeSpec> edges;
  for (auto& row : read_csv(edges_csv, "src,dst,tau")) {
    edges.push_back(EdgeSpec{row[0], row[1], parse_double(row[2], edges_csv.string())});
  }
  return CausalSetSpace(std::move(vertices), std::move(edges), exec);
}

void save_causet_csv(const CausalSetSpace& space, const std::filesystem::path& vertices_csv,
                     const std::filesystem::path& edges_csv) {
  std::string v = "id,T\n";
  for (const auto& vert : space.vertices()) {
    if (vert.id.find(',') != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "vertex id '" + vert.id + "' contains a comma");
    }
    v += vert.id + "," + format_double(vert.time) + "\n";
  }
  std::string e = "src,dst,tau\n";
  for (const auto& edge : space.edges()) {
    e += edge.src + "," + edge.dst + "," + format_double(edge.tau) + "\n";
  }
  write_file_atomically(vertices_csv, v);
  write_file_atomically(edges_csv, e);
}

}  // namespace lorentz
