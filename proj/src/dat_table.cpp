#include "prsvd/errors.hpp"
#include "prsvd/experiments.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace prsvd {
namespace {

void append_value(std::string &out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, " %.12g", v);
  out += buf;
}

} // namespace

std::string format_dat(const SweepTable &table) {
  const std::size_t nf = table.filter_labels.size();
  std::string out = "k";
  for (std::size_t f = 0; f < nf; ++f) {
    out += " q" + std::to_string(f);
  }
  for (std::size_t f = 0; f < nf; ++f) {
    out += " qpred" + std::to_string(f);
  }
  out += " lwbnd upbnd\n";
  for (std::size_t ki = 0; ki < table.k_grid.size(); ++ki) {
    out += std::to_string(table.k_grid[ki]);
    for (std::size_t f = 0; f < nf; ++f) {
      append_value(out, table.cells[ki][f].mean);
    }
    for (std::size_t f = 0; f < nf; ++f) {
      append_value(out, table.cells[ki][f].prediction);
    }
    append_value(out, table.lower[ki]);
    append_value(out, table.upper[ki]);
    out += '\n';
  }
  return out;
}

void emit_dat(const SweepTable &table, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("emit_dat: cannot open '" + path.string() + "' for writing");
  }
  out << format_dat(table);
  if (!out) {
    throw std::runtime_error("emit_dat: write to '" + path.string() + "' failed");
  }
}

SweepTable parse_dat(const std::string &text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) {
    throw ParseError("parse_dat: missing header");
  }
  std::istringstream hs(header);
  std::vector<std::string> cols;
  for (std::string c; hs >> c;) {
    cols.push_back(c);
  }
  if (cols.size() < 5 || (cols.size() - 3) % 2 != 0 || cols.front() != "k" ||
      cols[cols.size() - 2] != "lwbnd" || cols.back() != "upbnd") {
    throw ParseError("parse_dat: malformed header", 1);
  }
  const std::size_t nf = (cols.size() - 3) / 2;
  for (std::size_t f = 0; f < nf; ++f) {
    if (cols[1 + f] != "q" + std::to_string(f) || cols[1 + nf + f] != "qpred" + std::to_string(f)) {
      throw ParseError("parse_dat: unexpected column names", 1);
    }
  }

  SweepTable table;
  table.filter_labels.assign(nf, std::string());
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) {
      continue;
    }
    std::istringstream ls(line);
    std::size_t k = 0;
    std::vector<double> v(2 * nf + 2);
    if (!(ls >> k)) {
      throw ParseError("parse_dat: bad k", lineno);
    }
    for (double &x : v) {
      if (!(ls >> x)) {
        throw ParseError("parse_dat: short row", lineno);
      }
    }
    table.k_grid.push_back(k);
    std::vector<SweepCell> row(nf);
    for (std::size_t f = 0; f < nf; ++f) {
      row[f].mean = v[f];
      row[f].prediction = v[nf + f];
    }
    table.cells.push_back(std::move(row));
    table.lower.push_back(v[2 * nf]);
    table.upper.push_back(v[2 * nf + 1]);
  }
  return table;
}

} // namespace prsvd
