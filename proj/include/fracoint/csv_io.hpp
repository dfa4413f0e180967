#ifndef FRACOINT_CSV_IO_HPP
#define FRACOINT_CSV_IO_HPP

#include <string>
#include <vector>

#include "fracoint/matrix.hpp"

namespace fracoint {

struct CsvData {
  SeriesMatrix values;
  std::vector<std::string> header;  // empty when the file had none
  bool had_header = false;
};

// Comma-separated, '.' decimal, LF or CRLF, optional single header row
// (auto-detected: any non-numeric cell in the first row). Ragged rows and
// non-numeric cells are data errors carrying row/column coordinates.
CsvData ingest_csv(const std::string& path);
CsvData ingest_csv_text(const std::string& text, const std::string& origin);

void write_csv(const std::string& path, const SeriesMatrix& series,
               const std::vector<std::string>& header = {});

}  // namespace fracoint

#endif
