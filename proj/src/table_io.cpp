#include "radbasis/table_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace radbasis {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_csv(const TableDoc& doc, std::ostream& out) {
  for (const auto& [key, value] : doc.meta) {
    out << "# " << key << ": " << value << "\n";
  }
  for (std::size_t i = 0; i < doc.columns.size(); ++i) {
    out << (i ? "," : "") << doc.columns[i];
  }
  out << "\n";
  for (const auto& row : doc.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_double(row[i]);
    }
    out << "\n";
  }
}

void write_json(const TableDoc& doc, std::ostream& out) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : doc.meta) meta[key] = value;
  j["meta"] = std::move(meta);
  j["columns"] = doc.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : doc.rows) rows.push_back(row);
  j["rows"] = std::move(rows);
  out << j.dump(2) << "\n";
}

std::string doc_to_string(const TableDoc& doc, TableFormat format) {
  std::ostringstream out;
  if (format == TableFormat::Csv) {
    write_csv(doc, out);
  } else {
    write_json(doc, out);
  }
  return out.str();
}

TableDoc read_csv(std::istream& in) {
  TableDoc doc;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body[0] == ' ') body.erase(0, 1);
      const auto colon = body.find(": ");
      if (colon != std::string::npos) {
        doc.meta.emplace_back(body.substr(0, colon), body.substr(colon + 2));
      }
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!header_seen) {
      doc.columns = std::move(fields);
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      std::size_t consumed = 0;
      row.push_back(std::stod(f, &consumed));
      if (consumed == 0) throw std::invalid_argument("read_csv: malformed numeric field");
    }
    if (row.size() != doc.columns.size()) {
      throw std::invalid_argument("read_csv: row width does not match header");
    }
    doc.rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::invalid_argument("read_csv: missing header line");
  return doc;
}

}  // namespace radbasis
