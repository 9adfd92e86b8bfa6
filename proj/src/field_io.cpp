#include "fracgs/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "fracgs/error.hpp"

namespace fracgs {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_field_csv(std::ostream& out, const SpectralField& field) {
  out << "t,u\n";
  for (Eigen::Index j = 0; j < field.size(); ++j) {
    out << format_double(field.grid().point(j)) << ',' << format_double(field.values()[j]) << '\n';
  }
}

SpectralField read_field_csv(std::istream& in, const Grid1D& grid) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::InvalidInput, "empty field CSV");
  if (line.rfind("t,u", 0) != 0) {
    throw Error(ErrorCode::InvalidInput, "field CSV must start with header 't,u'");
  }
  std::vector<double> values;
  Eigen::Index row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::InvalidInput, "malformed CSV row " + std::to_string(row + 2));
    }
    double t = 0.0;
    double u = 0.0;
    try {
      t = std::stod(line.substr(0, comma));
      u = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "non-numeric CSV row " + std::to_string(row + 2));
    }
    if (row >= grid.size() || std::abs(t - grid.point(row)) > 1e-9) {
      throw Error(ErrorCode::InvalidInput,
                  "CSV row " + std::to_string(row + 2) + " is not on the configured grid");
    }
    values.push_back(u);
    ++row;
  }
  if (row != grid.size()) {
    throw Error(ErrorCode::InvalidInput, "CSV has " + std::to_string(row) + " rows, grid has " +
                                             std::to_string(grid.size()));
  }
  return SpectralField::from_values(grid, Eigen::Map<Eigen::VectorXd>(values.data(), row));
}

nlohmann::json field_to_json(const SpectralField& field) {
  const Eigen::VectorXd& v = field.values();
  return {{"L", field.grid().half_width()},
          {"N", field.grid().size()},
          {"values", std::vector<double>(v.data(), v.data() + v.size())}};
}

SpectralField field_from_json(const nlohmann::json& record) {
  try {
    const Grid1D grid = make_grid(record.at("L").get<double>(), record.at("N").get<Eigen::Index>());
    const auto values = record.at("values").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(values.size()) != grid.size()) {
      throw Error(ErrorCode::InvalidInput, "field record has wrong number of values");
    }
    return SpectralField::from_values(
        grid, Eigen::Map<const Eigen::VectorXd>(values.data(), grid.size()));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed field record: ") + e.what());
  }
}

}  // namespace fracgs
