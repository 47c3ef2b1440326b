#include "plateau/observable.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace plateau {

namespace {
std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

void Observable::add_term(double coeff, const PauliString& pauli) {
  if (pauli.num_qubits() != n_)
    throw std::invalid_argument("Observable::add_term: qubit count mismatch");
  if (!std::isfinite(coeff)) throw std::invalid_argument("Observable::add_term: non-finite coefficient");
  if (!pauli.is_hermitian())
    throw std::invalid_argument("Observable::add_term: term must be Hermitian (phase 0 or 2)");
  double c = coeff * pauli.sign();
  PauliString key = pauli.unsigned_form();
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].pauli.same_letters(key)) {
      terms_[i].coeff += c;
      if (terms_[i].coeff == 0.0) terms_.erase(terms_.begin() + static_cast<std::ptrdiff_t>(i));
      return;
    }
  }
  if (c != 0.0) terms_.push_back(Term{c, std::move(key)});
}

double Observable::identity_coefficient() const {
  for (const auto& t : terms_)
    if (t.pauli.is_identity()) return t.coeff;
  return 0.0;
}

double Observable::coefficient(const PauliString& pauli) const {
  for (const auto& t : terms_)
    if (t.pauli.same_letters(pauli)) return t.coeff;
  return 0.0;
}

bool Observable::is_diagonal() const {
  for (const auto& t : terms_)
    for (std::size_t q = 0; q < n_; ++q)
      if (t.pauli.at(q) == Pauli::X || t.pauli.at(q) == Pauli::Y) return false;
  return true;
}

std::size_t Observable::max_weight() const {
  std::size_t w = 0;
  for (const auto& t : terms_) w = std::max(w, t.pauli.weight());
  return w;
}

std::string Observable::to_text() const {
  std::string out;
  for (const auto& t : terms_) {
    out += format_double(t.coeff);
    out += ' ';
    out += t.pauli.label();
    out += '\n';
  }
  return out;
}

Observable Observable::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  Observable h;
  bool first = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double coeff;
    std::string label;
    if (!(ls >> coeff)) {
      std::string rest;
      if (ls.clear(), ls >> rest)
        throw std::invalid_argument("observable line " + std::to_string(line_no) +
                                    ": expected '<coeff> <label>'");
      continue;  // blank or comment-only line
    }
    if (!(ls >> label))
      throw std::invalid_argument("observable line " + std::to_string(line_no) +
                                  ": missing Pauli label");
    PauliString p = PauliString::from_label(label);
    if (first) {
      h = Observable(p.num_qubits());
      first = false;
    }
    if (p.num_qubits() != h.num_qubits())
      throw std::invalid_argument("observable line " + std::to_string(line_no) +
                                  ": label length differs from previous terms");
    h.add_term(coeff, p);
  }
  if (first) throw std::invalid_argument("observable text contains no terms");
  return h;
}

bool Observable::operator==(const Observable& other) const {
  if (n_ != other.n_ || terms_.size() != other.terms_.size()) return false;
  for (const auto& t : terms_) {
    bool found = false;
    for (const auto& u : other.terms_) {
      if (t.pauli.same_letters(u.pauli)) {
        if (t.coeff != u.coeff) return false;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::string locality_name(LocalityClass c) {
  switch (c) {
    case LocalityClass::Local: return "local";
    case LocalityClass::Mixed: return "mixed";
    case LocalityClass::Global: return "global";
  }
  return "?";
}

LocalityClass classify_observable(const Observable& h, std::size_t locality_threshold,
                                  double coeff_floor) {
  if (h.empty()) throw std::invalid_argument("classify_observable: empty observable");
  bool any_heavy = false;
  bool any_light_significant = false;
  bool any_nonidentity = false;
  for (const auto& t : h.terms()) {
    std::size_t w = t.pauli.weight();
    if (w == 0) continue;
    any_nonidentity = true;
    if (w > locality_threshold)
      any_heavy = true;
    else if (std::fabs(t.coeff) >= coeff_floor)
      any_light_significant = true;
  }
  if (!any_nonidentity) return LocalityClass::Local;
  if (!any_heavy) return LocalityClass::Local;
  if (any_light_significant) return LocalityClass::Mixed;
  return LocalityClass::Global;
}

}  // namespace plateau
