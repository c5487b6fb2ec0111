#include "sos/lp/lp_format.hpp"

#include <ostream>
#include <sstream>

namespace sos::lp {

namespace {

std::string var_name(const Problem& p, int j) {
  if (j < static_cast<int>(p.var_names.size()) && !p.var_names[j].empty())
    return p.var_names[j];
  return "x" + std::to_string(j + 1);
}

void write_row(std::ostream& os, const Problem& p, const Eigen::MatrixXd& a, int row) {
  bool first = true;
  int terms_on_line = 0;
  for (int j = 0; j < a.cols(); ++j) {
    double v = a(row, j);
    if (v == 0.0) continue;
    if (first) {
      os << (v < 0 ? "- " : "");
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    double av = std::abs(v);
    std::ostringstream num;
    num.precision(17);
    num << av;
    os << num.str() << " " << var_name(p, j);
    first = false;
    if (++terms_on_line % 8 == 0) os << "\n   ";
  }
  if (first) os << "0 " << var_name(p, 0);
}

std::string rhs_str(double v) {
  std::ostringstream num;
  num.precision(17);
  num << v;
  return num.str();
}

}  // namespace

void write_lp_text(const Problem& p, std::ostream& os) {
  os << "\\ " << p.n_vars() << " variables, " << p.n_eq() << " equalities, " << p.n_le()
     << " inequalities\n";
  os << "Minimize\n obj: ";
  Eigen::MatrixXd crow = p.c.transpose();
  write_row(os, p, crow, 0);
  os << "\nSubject To\n";
  for (int i = 0; i < p.n_eq(); ++i) {
    std::string nm = (i < static_cast<int>(p.eq_names.size()) && !p.eq_names[i].empty())
                         ? p.eq_names[i]
                         : ("e" + std::to_string(i + 1));
    os << " " << nm << ": ";
    write_row(os, p, p.a_eq, i);
    os << " = " << rhs_str(p.b_eq[i]) << "\n";
  }
  for (int i = 0; i < p.n_le(); ++i) {
    std::string nm = (i < static_cast<int>(p.le_names.size()) && !p.le_names[i].empty())
                         ? p.le_names[i]
                         : ("l" + std::to_string(i + 1));
    os << " " << nm << ": ";
    write_row(os, p, p.a_le, i);
    os << " <= " << rhs_str(p.b_le[i]) << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < p.n_vars(); ++j) os << " 0 <= " << var_name(p, j) << "\n";
  os << "End\n";
}

std::string lp_text(const Problem& p) {
  std::ostringstream os;
  write_lp_text(p, os);
  return os.str();
}

}  // namespace sos::lp
