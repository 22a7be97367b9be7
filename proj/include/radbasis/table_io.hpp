#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace radbasis {

/// Column-oriented numeric table with ordered string metadata; the common
/// serialization carrier for experiment outputs.
///
/// CSV layout: one `# key: value` line per metadata entry, a header line of
/// column names, then one comma-separated row per entry. JSON layout:
/// {"meta": {...}, "columns": [...], "rows": [[...]]}. Doubles are printed
/// with 17 significant digits, so equal inputs produce byte-identical files.
struct TableDoc {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

enum class TableFormat { Csv, Json };

/// %.17g rendering used by the CSV writer (round-trips doubles exactly).
std::string format_double(double x);

void write_csv(const TableDoc& doc, std::ostream& out);
void write_json(const TableDoc& doc, std::ostream& out);
std::string doc_to_string(const TableDoc& doc, TableFormat format);

/// Parse the CSV form back (metadata, header, rows). Round-trips write_csv.
TableDoc read_csv(std::istream& in);

}  // namespace radbasis
