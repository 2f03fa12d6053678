#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "framelet/trig_polynomial.hpp"

namespace framelet {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mask file '" + path + "'");
  return in;
}

// Parses coefficient lines collected from a file section.
TrigPolynomial parse_lines(const std::vector<std::pair<int, std::string>>& lines,
                           const std::string& source) {
  std::vector<std::vector<double>> rows;
  int columns = 0;
  for (const auto& [lineno, text] : lines) {
    std::istringstream ls(text);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ValidationError(source + ":" + std::to_string(lineno) + ": not a number '" + tok + "'");
      }
    }
    if (row.size() != 3 && row.size() != 4) {
      throw ValidationError(source + ":" + std::to_string(lineno) +
                            ": expected 'k_1 [k_2] re im', got " + std::to_string(row.size()) +
                            " fields");
    }
    if (columns == 0) columns = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != columns) {
      throw ValidationError(source + ":" + std::to_string(lineno) + ": inconsistent column count");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError(source + ": mask has no coefficients");

  const int dim = columns - 2;
  TrigPolynomial::IndexMatrix idx(dim, static_cast<Eigen::Index>(rows.size()));
  Eigen::VectorXcd cs(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t t = 0; t < rows.size(); ++t) {
    for (int j = 0; j < dim; ++j) {
      const double k = rows[t][j];
      if (k != std::floor(k)) throw ValidationError(source + ": non-integer mask index");
      idx(j, static_cast<Eigen::Index>(t)) = static_cast<int>(k);
    }
    cs(static_cast<Eigen::Index>(t)) = Complex(rows[t][dim], rows[t][dim + 1]);
  }
  return TrigPolynomial(std::move(idx), std::move(cs));
}

}  // namespace

TrigPolynomial parse_mask(std::istream& in, const std::string& source) {
  std::vector<std::pair<int, std::string>> lines;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    lines.emplace_back(lineno, t);
  }
  return parse_lines(lines, source);
}

TrigPolynomial read_mask_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_mask(in, path);
}

void write_mask(std::ostream& out, const TrigPolynomial& p) {
  out << std::setprecision(17);
  for (Eigen::Index t = 0; t < p.size(); ++t) {
    for (int j = 0; j < p.dim(); ++j) out << p.indices()(j, t) << ' ';
    out << p.coeffs()(t).real() << ' ' << p.coeffs()(t).imag() << '\n';
  }
}

MaskBundle read_mask_bundle(const std::string& path) {
  auto in = open_or_throw(path);
  struct Section {
    std::string role;
    std::vector<std::pair<int, std::string>> lines;
  };
  std::vector<Section> sections;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const std::string body = trim(t.substr(1));
      if (!body.empty() && body.front() == '@') {
        std::istringstream role_stream(body.substr(1));
        Section s;
        role_stream >> s.role;
        sections.push_back(std::move(s));
      }
      continue;
    }
    if (sections.empty()) {
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": coefficient before any '# @role' directive");
    }
    sections.back().lines.emplace_back(lineno, t);
  }

  MaskBundle bundle;
  bool have_a = false, have_a_dual = false;
  for (const auto& s : sections) {
    const std::string where = path + " [" + s.role + "]";
    if (s.role == "a") {
      bundle.a = parse_lines(s.lines, where);
      have_a = true;
    } else if (s.role == "a_dual") {
      bundle.a_dual = parse_lines(s.lines, where);
      have_a_dual = true;
    } else if (s.role == "b") {
      bundle.bs.push_back(parse_lines(s.lines, where));
    } else if (s.role == "b_dual") {
      bundle.bs_dual.push_back(parse_lines(s.lines, where));
    } else {
      throw ValidationError(path + ": unknown mask role '" + s.role + "'");
    }
  }
  if (!have_a || !have_a_dual) throw ValidationError(path + ": bundle needs '@a' and '@a_dual' masks");
  if (bundle.bs.empty() || bundle.bs.size() != bundle.bs_dual.size()) {
    throw ValidationError(path + ": bundle needs matching '@b' / '@b_dual' masks");
  }
  return bundle;
}

MaskBundle bundle_from_files(const std::vector<std::string>& paths) {
  if (paths.size() < 4 || paths.size() % 2 != 0) {
    throw ValidationError("expected mask files: a a_dual b_1 b_1_dual [b_2 b_2_dual ...]");
  }
  MaskBundle bundle{read_mask_file(paths[0]), read_mask_file(paths[1]), {}, {}};
  for (std::size_t i = 2; i < paths.size(); i += 2) {
    bundle.bs.push_back(read_mask_file(paths[i]));
    bundle.bs_dual.push_back(read_mask_file(paths[i + 1]));
  }
  return bundle;
}

}  // namespace framelet
