#include "ndk/printer.hpp"

#include <vector>

namespace ndk {

namespace {

class Printer {
 public:
  Printer(const Signature& sig, RenderMode mode) : sig_(sig), mode_(mode) {}

  std::string print(const Expr& e, bool top) const {
    return mode_ == RenderMode::Pretty ? pretty(e, top) : ascii(e, top);
  }

 private:
  static std::string wrap(const std::string& s, bool top) { return top ? s : "(" + s + ")"; }

  std::string join(const std::vector<Expr>& args) const {
    std::string out;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ",";
      out += print(args[i], false);
    }
    return out;
  }

  static std::string fill_template(const std::string& tmpl, const std::vector<std::string>& args) {
    std::string out;
    for (std::size_t i = 0; i < tmpl.size(); ++i) {
      if (tmpl[i] == '%' && i + 1 < tmpl.size() && tmpl[i + 1] >= '1' && tmpl[i + 1] <= '9') {
        std::size_t k = static_cast<std::size_t>(tmpl[i + 1] - '1');
        out += k < args.size() ? args[k] : std::string("?");
        ++i;
      } else {
        out += tmpl[i];
      }
    }
    return out;
  }

  std::string application(const Expr& e, const SymbolInfo* info, bool top) const {
    const std::string* display = sig_.pretty(e.name());
    bool infix = info && info->infix && e.args().size() == 2;
    if (display && display->find("%1") != std::string::npos) {
      std::vector<std::string> rendered;
      for (const auto& a : e.args()) rendered.push_back(print(a, false));
      return fill_template(*display, rendered);
    }
    const std::string& sym = display ? *display : e.name();
    if (infix) return wrap(print(e.arg(0), false) + " " + sym + " " + print(e.arg(1), false), top);
    if (display && e.args().size() == 1) return sym + print(e.arg(0), false);
    return sym + "(" + join(e.args()) + ")";
  }

  static const char* connective(Kind k) {
    switch (k) {
      case Kind::And: return " & ";
      case Kind::Or: return " v ";
      case Kind::Implies: return " -> ";
      default: return " <-> ";
    }
  }

  std::string pretty(const Expr& e, bool top) const {
    switch (e.kind()) {
      case Kind::Variable:
        return e.name();
      case Kind::Constant: {
        const std::string* display = sig_.pretty(e.name());
        return display ? *display : e.name();
      }
      case Kind::Function:
        return application(e, sig_.function(e.name()), top);
      case Kind::Predicate:
        return application(e, sig_.predicate(e.name()), top);
      case Kind::Extension:
        return "{" + e.name() + ": " + pretty(e.body(), false) + "}";
      case Kind::Equal:
        return wrap(pretty(e.lhs(), false) + " = " + pretty(e.rhs(), false), top);
      case Kind::Member:
        return wrap(pretty(e.lhs(), false) + " ε " + pretty(e.rhs(), false), top);
      case Kind::SecondOrder:
        return e.name();
      case Kind::Bottom:
        return "_|_";
      case Kind::Implies:
        if (e.is_negation()) return "¬" + pretty(e.lhs(), false);
        [[fallthrough]];
      case Kind::And:
      case Kind::Or:
      case Kind::Iff:
        return wrap(pretty(e.lhs(), false) + connective(e.kind()) + pretty(e.rhs(), false), top);
      case Kind::Forall:
        return "∀" + e.name() + "." + pretty(e.body(), false);
      case Kind::Exists:
        return "∃" + e.name() + "." + pretty(e.body(), false);
      case Kind::ExistsUnique:
        return "∃¹" + e.name() + "." + pretty(e.body(), false);
    }
    return "?";
  }

  std::string ascii(const Expr& e, bool top) const {
    switch (e.kind()) {
      case Kind::Variable:
      case Kind::Constant:
      case Kind::SecondOrder:
        return e.name();
      case Kind::Function:
      case Kind::Predicate:
        return e.name() + "(" + join(e.args()) + ")";
      case Kind::Extension:
        // parenthesized so that a trailing "=" cannot be read into the body
        return "extension " + e.name() + ". (" + ascii(e.body(), true) + ")";
      case Kind::Equal:
        return wrap(ascii(e.lhs(), false) + " = " + ascii(e.rhs(), false), top);
      case Kind::Member:
        return std::string(kMembership) + "(" + join(e.args()) + ")";
      case Kind::Bottom:
        return "_|_";
      case Kind::Implies:
        if (e.is_negation()) return "neg " + ascii(e.lhs(), false);
        [[fallthrough]];
      case Kind::And:
      case Kind::Or:
      case Kind::Iff:
        return wrap(ascii(e.lhs(), false) + connective(e.kind()) + ascii(e.rhs(), false), top);
      // Quantifier bodies extend as far right as possible, so a nested
      // quantifier is always parenthesized.
      case Kind::Forall:
        return wrap("forall " + e.name() + ". " + ascii(e.body(), false), top);
      case Kind::Exists:
        return wrap("exists " + e.name() + ". " + ascii(e.body(), false), top);
      case Kind::ExistsUnique:
        return wrap("exists1 " + e.name() + ". " + ascii(e.body(), false), top);
    }
    return "?";
  }

  const Signature& sig_;
  RenderMode mode_;
};

}  // namespace

std::string render(const Expr& e, const Signature& sig, RenderMode mode) {
  return Printer(sig, mode).print(e, false);
}

std::string render_line(const Expr& e, const Signature& sig, RenderMode mode) {
  return Printer(sig, mode).print(e, true);
}

std::string render_line(const Expr& e) {
  static const Signature empty;
  return render_line(e, empty);
}

}  // namespace ndk
