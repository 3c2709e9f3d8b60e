#include "rp2bundle/section_io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace rp2bundle {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

double parse_double(const std::string& token) {
  std::size_t used = 0;
  const double v = std::stod(token, &used);
  while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
  if (used != token.size()) throw std::runtime_error("section csv: malformed number " + token);
  return v;
}

}  // namespace

void write_section_csv(std::ostream& out, const SampledSection& section) {
  out << "index,x1,x2,x3";
  for (int c = 0; c < section.dimension(); ++c) out << ",re" << c << ",im" << c;
  out << "\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < section.size(); ++i) {
    const Vec3& x = section.point(i).vec();
    out << i << ',' << x(0) << ',' << x(1) << ',' << x(2);
    const Eigen::VectorXcd& v = section.value(i);
    for (int c = 0; c < section.dimension(); ++c)
      out << ',' << v(c).real() << ',' << v(c).imag();
    out << "\n";
  }
}

SampledSection read_section_csv(std::istream& in) {
  std::vector<SpherePoint> points;
  std::vector<Eigen::VectorXcd> values;
  std::string line;
  int dimension = -1;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("index", 0) == 0) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() < 6 || (fields.size() - 4) % 2 != 0)
      throw std::runtime_error("section csv: wrong field count on row " + std::to_string(row));
    const int dim = static_cast<int>((fields.size() - 4) / 2);
    if (dimension < 0)
      dimension = dim;
    else if (dim != dimension)
      throw std::runtime_error("section csv: inconsistent dimension on row " +
                               std::to_string(row));
    if (parse_double(fields[0]) != static_cast<double>(row))
      throw std::runtime_error("section csv: rows out of order at " + std::to_string(row));
    points.emplace_back(
        Vec3(parse_double(fields[1]), parse_double(fields[2]), parse_double(fields[3])));
    Eigen::VectorXcd v(dimension);
    for (int c = 0; c < dimension; ++c)
      v(c) = Complex(parse_double(fields[4 + 2 * c]), parse_double(fields[5 + 2 * c]));
    values.push_back(std::move(v));
    ++row;
  }
  return SampledSection(std::move(points), std::move(values));
}

void write_section_json(std::ostream& out, const SampledSection& section) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < section.size(); ++i) {
    const Vec3& x = section.point(i).vec();
    std::vector<double> re(section.dimension());
    std::vector<double> im(section.dimension());
    for (int c = 0; c < section.dimension(); ++c) {
      re[c] = section.value(i)(c).real();
      im[c] = section.value(i)(c).imag();
    }
    rows.push_back({{"index", i}, {"x", {x(0), x(1), x(2)}}, {"re", re}, {"im", im}});
  }
  const nlohmann::json j = {{"dimension", section.dimension()}, {"rows", rows}};
  out << j.dump(2) << "\n";
}

SampledSection read_section_json(std::istream& in) {
  nlohmann::json j;
  in >> j;
  const int dimension = j.at("dimension").get<int>();
  if (dimension < 1) throw std::runtime_error("section json: dimension must be positive");
  std::vector<SpherePoint> points;
  std::vector<Eigen::VectorXcd> values;
  std::size_t row = 0;
  for (const auto& entry : j.at("rows")) {
    if (entry.at("index").get<std::size_t>() != row)
      throw std::runtime_error("section json: rows out of order at " + std::to_string(row));
    const auto x = entry.at("x").get<std::vector<double>>();
    if (x.size() != 3) throw std::runtime_error("section json: point needs three coordinates");
    points.emplace_back(Vec3(x[0], x[1], x[2]));
    const auto re = entry.at("re").get<std::vector<double>>();
    const auto im = entry.at("im").get<std::vector<double>>();
    if (static_cast<int>(re.size()) != dimension || static_cast<int>(im.size()) != dimension)
      throw std::runtime_error("section json: value dimension mismatch at row " +
                               std::to_string(row));
    Eigen::VectorXcd v(dimension);
    for (int c = 0; c < dimension; ++c) v(c) = Complex(re[c], im[c]);
    values.push_back(std::move(v));
    ++row;
  }
  return SampledSection(std::move(points), std::move(values));
}

namespace {

enum class Format { Csv, Json };

Format format_from_path(const std::string& path) {
  const std::size_t dot = path.find_last_of('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  if (ext == ".csv") return Format::Csv;
  if (ext == ".json") return Format::Json;
  throw std::invalid_argument("section file: unknown extension on " + path);
}

}  // namespace

void write_section_file(const std::string& path, const SampledSection& section) {
  const Format fmt = format_from_path(path);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("section file: cannot open " + path + " for writing");
  if (fmt == Format::Csv)
    write_section_csv(out, section);
  else
    write_section_json(out, section);
  if (!out) throw std::runtime_error("section file: write to " + path + " failed");
}

SampledSection read_section_file(const std::string& path) {
  const Format fmt = format_from_path(path);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("section file: cannot open " + path);
  return fmt == Format::Csv ? read_section_csv(in) : read_section_json(in);
}

}  // namespace rp2bundle
