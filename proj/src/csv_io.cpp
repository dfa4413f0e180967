#include "fracoint/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "fracoint/errors.hpp"

namespace fracoint {

namespace {

bool parse_cell(const std::string& cell, double& out) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  while (first != last && (*first == ' ' || *first == '\t')) ++first;
  while (last != first && (*(last - 1) == ' ' || *(last - 1) == '\t')) --last;
  if (first == last) return false;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace

CsvData ingest_csv_text(const std::string& text, const std::string& origin) {
  const std::string stage = "ingest";
  std::vector<std::vector<std::string>> rows;
  {
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();  // CRLF
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      rows.push_back(split_row(line));
    }
  }
  if (rows.empty()) throw data_error(stage, origin + ": empty file");

  const std::size_t q = rows[0].size();
  double scratch = 0.0;
  bool header = false;
  for (const auto& cell : rows[0])
    if (!parse_cell(cell, scratch)) header = true;

  CsvData out;
  out.had_header = header;
  if (header) {
    out.header = rows[0];
    if (rows.size() < 2) throw data_error(stage, origin + ": header but no data rows");
  }
  const std::size_t first_data = header ? 1 : 0;
  const std::size_t n = rows.size() - first_data;
  out.values = SeriesMatrix(n, q);
  for (std::size_t r = first_data; r < rows.size(); ++r) {
    const std::size_t file_row = r + 1;
    if (rows[r].size() != q)
      throw data_error(stage, origin + ": ragged row " + std::to_string(file_row) +
                                  " has " + std::to_string(rows[r].size()) +
                                  " cells, expected " + std::to_string(q));
    for (std::size_t c = 0; c < q; ++c) {
      double v = 0.0;
      if (!parse_cell(rows[r][c], v))
        throw data_error(stage, origin + ": non-numeric cell at row " +
                                    std::to_string(file_row) + ", column " +
                                    std::to_string(c + 1));
      out.values.at(r - first_data, c) = v;
    }
  }
  out.values.validate("ingest");
  return out;
}

CsvData ingest_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("ingest", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return ingest_csv_text(buf.str(), path);
}

void write_csv(const std::string& path, const SeriesMatrix& series,
               const std::vector<std::string>& header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("write", "cannot open '" + path + "' for writing");
  out.precision(17);
  if (!header.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c)
      out << (c ? "," : "") << header[c];
    out << "\n";
  }
  for (std::size_t t = 0; t < series.n(); ++t) {
    for (std::size_t c = 0; c < series.q(); ++c)
      out << (c ? "," : "") << series.at(t, c);
    out << "\n";
  }
  if (!out) throw data_error("write", "failed writing '" + path + "'");
}

}  // namespace fracoint
