#include "omn/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "omn/errors.hpp"

namespace omn {
namespace {

using Value = std::vector<double>;

class ExprParser {
 public:
  ExprParser(std::string_view text, const ExprEnv& env) : text_(text), env_(env) {}

  Value parse() {
    Value v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    if (v.empty()) fail("empty value");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("in expression '" + std::string(text_) + "': " + why);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  template <class Op>
  Value combine(const Value& a, const Value& b, Op op) {
    if (a.size() != 1 && b.size() != 1 && a.size() != b.size()) fail("vector length mismatch");
    const std::size_t n = std::max(a.size(), b.size());
    Value out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = op(a[a.size() == 1 ? 0 : i], b[b.size() == 1 ? 0 : i]);
    return out;
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (accept('+')) {
        v = combine(v, term(), [](double x, double y) { return x + y; });
      } else if (accept('-')) {
        v = combine(v, term(), [](double x, double y) { return x - y; });
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      if (accept('*')) {
        v = combine(v, unary(), [](double x, double y) { return x * y; });
      } else if (accept('/')) {
        v = combine(v, unary(), [](double x, double y) { return x / y; });
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (accept('-')) {
      Value v = unary();
      for (double& x : v) x = -x;
      return v;
    }
    if (accept('+')) return unary();
    return primary();
  }

  double scalar(const Value& v, const char* what) {
    if (v.size() != 1) fail(std::string(what) + " must be a scalar");
    return v[0];
  }

  Value primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (accept('(')) {
      Value v = expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return {number()};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::string name = identifier();
      if (accept('(')) return call(name);
      if (name == "pi") return {std::numbers::pi};
      if (auto it = env_.find(name); it != env_.end()) return {it->second};
      fail("unknown name '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  double number() {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc()) fail("malformed number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::vector<Value> arguments() {
    std::vector<Value> args;
    if (accept(')')) return args;
    do {
      args.push_back(expr());
    } while (accept(','));
    expect(')');
    return args;
  }

  Value call(const std::string& name) {
    const std::vector<Value> args = arguments();
    if (name == "list") {
      Value out;
      for (const auto& a : args) out.insert(out.end(), a.begin(), a.end());
      if (out.empty()) fail("list() needs at least one value");
      return out;
    }
    if (name == "linspace") {
      if (args.size() != 3) fail("linspace(a, b, n) takes three arguments");
      const double a = scalar(args[0], "linspace start");
      const double b = scalar(args[1], "linspace stop");
      const double nd = scalar(args[2], "linspace count");
      if (!(nd >= 1.0) || nd != std::floor(nd) || nd > 1e7) fail("linspace count must be a positive integer");
      const auto n = static_cast<std::size_t>(nd);
      Value out(n);
      if (n == 1) {
        out[0] = a;
        return out;
      }
      const double step = (b - a) / static_cast<double>(n - 1);
      for (std::size_t i = 0; i < n; ++i) out[i] = a + step * static_cast<double>(i);
      out.back() = b;
      return out;
    }
    fail("unknown function '" + name + "'");
  }

  std::string_view text_;
  const ExprEnv& env_;
  std::size_t pos_ = 0;
};

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<Entry> split_entries(std::string_view text) {
  std::vector<Entry> entries;
  int line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    Entry e{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), line_no};
    if (e.key.empty() || e.value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    }
    for (const auto& prev : entries) {
      if (prev.key == e.key) throw ConfigError("line " + std::to_string(line_no) + ": duplicate key " + e.key);
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

Value eval_at(const Entry& e, const ExprEnv& env) {
  try {
    return evaluate_expression(e.value, env);
  } catch (const ConfigError& err) {
    throw ConfigError("line " + std::to_string(e.line) + ": " + err.what());
  }
}

double eval_scalar(const Entry& e, const ExprEnv& env) {
  const Value v = eval_at(e, env);
  if (v.size() != 1) throw ConfigError("line " + std::to_string(e.line) + ": " + e.key + " must be a scalar");
  return v[0];
}

}  // namespace

std::vector<double> evaluate_expression(std::string_view text, const ExprEnv& env) {
  return ExprParser(text, env).parse();
}

SweepSpec parse_config(std::string_view text) {
  const std::vector<Entry> entries = split_entries(text);
  SweepSpec spec;
  spec.parallel = 0;  // unset; the caller picks a worker count

  struct BaseEntry {
    ParamKey key;
    const Entry* entry;
  };
  std::vector<BaseEntry> base;
  std::vector<const Entry*> axes;
  for (const auto& e : entries) {
    if (e.key.starts_with("base.")) {
      base.push_back({parse_param_key(std::string_view(e.key).substr(5)), &e});
    } else if (e.key.starts_with("axes.")) {
      axes.push_back(&e);
    } else if (e.key == "output") {
      std::string_view v = e.value;
      if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
      spec.output_path = std::string(v);
    } else if (e.key != "parallel") {
      throw ConfigError("line " + std::to_string(e.line) + ": unknown key " + e.key);
    }
  }

  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (base[i].key.param == base[j].key.param) {
        throw ConfigError("conflicting keys base." + base[j].key.name() + " and base." + base[i].key.name());
      }

  // Mechanical frequencies first: other expressions may refer to them.
  ExprEnv env;
  for (const auto& b : base) {
    if (b.key.param == Param::omega_m1 || b.key.param == Param::omega_m2) {
      apply_param(spec.base, b.key, eval_scalar(*b.entry, env));
    }
  }
  env["omega_m1"] = spec.base.omega_m1;
  env["omega_m2"] = spec.base.omega_m2;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : base) {
      if (b.key.param == Param::omega_m1 || b.key.param == Param::omega_m2) continue;
      if (b.key.in_omega_m != (pass == 1)) continue;
      apply_param(spec.base, b.key, eval_scalar(*b.entry, env));
    }
  }

  for (const Entry* e : axes) {
    const ParamKey key = parse_param_key(std::string_view(e->key).substr(5));
    spec.axes.push_back({key, eval_at(*e, env)});
  }

  for (const auto& e : entries) {
    if (e.key != "parallel") continue;
    const double p = eval_scalar(e, env);
    if (!(p >= 1.0) || p != std::floor(p) || p > 4096.0) {
      throw ConfigError("line " + std::to_string(e.line) + ": parallel must be a positive integer");
    }
    spec.parallel = static_cast<unsigned>(p);
  }
  spec.validate();
  return spec;
}

SweepSpec load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace omn
