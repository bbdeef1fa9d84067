// Copyright 2026 The crds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "crds/homeo.hpp"

namespace crds {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Homeo parse_all() {
    Homeo h = parse_homeo();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return h;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw HomeoParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a map name");
    return std::string(text_.substr(start, pos_ - start));
  }

  double number() {
    skip_ws();
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double value = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return value;
  }

  Homeo build(const std::size_t at, auto&& make) {
    try {
      return make();
    } catch (const InvalidHomeo& e) {
      throw HomeoParseError(e.what(), at);
    }
  }

  Homeo parse_homeo() {
    skip_ws();
    const std::size_t at = pos_;
    const std::string name = identifier();
    if (name == "rotation") {
      expect('(');
      const double alpha = number();
      expect(')');
      return build(at, [&] { return Homeo::rotation(alpha); });
    }
    if (name == "sine") {
      expect('(');
      const double eps = number();
      expect(')');
      return build(at, [&] { return Homeo::sine(eps); });
    }
    if (name == "mobius") {
      expect('(');
      const double alpha = number();
      expect(',');
      const double re = number();
      expect(',');
      const double im = number();
      expect(')');
      return build(at, [&] { return Homeo::mobius(alpha, {re, im}); });
    }
    if (name == "pwl") {
      expect('[');
      std::vector<std::pair<double, double>> points;
      do {
        expect('(');
        const double x = number();
        expect(',');
        const double y = number();
        expect(')');
        points.emplace_back(x, y);
      } while (peek(',') && (++pos_, true));
      expect(']');
      return build(at, [&] { return Homeo::piecewise_linear(std::move(points)); });
    }
    if (name == "compose") {
      expect('[');
      std::vector<Homeo> parts;
      do {
        parts.push_back(parse_homeo());
      } while (peek(',') && (++pos_, true));
      expect(']');
      return build(at, [&] { return Homeo::compose(std::move(parts)); });
    }
    pos_ = at;
    fail("unknown map '" + name + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Homeo Homeo::parse(std::string_view text) { return Parser(text).parse_all(); }

std::string Homeo::to_string() const {
  if (const auto* r = std::get_if<Rotation>(&family_)) return "rotation(" + num(r->alpha) + ")";
  if (const auto* s = std::get_if<SinePerturbation>(&family_)) return "sine(" + num(s->epsilon) + ")";
  if (const auto* m = std::get_if<Mobius>(&family_))
    return "mobius(" + num(m->alpha) + ", " + num(m->a.real()) + ", " + num(m->a.imag()) + ")";
  if (const auto* p = std::get_if<PiecewiseLinear>(&family_)) {
    std::string out = "pwl[";
    for (std::size_t i = 0; i < p->breakpoints.size(); ++i) {
      if (i) out += ",";
      out += "(" + num(p->breakpoints[i].first) + "," + num(p->breakpoints[i].second) + ")";
    }
    return out + "]";
  }
  const auto& c = std::get<Composition>(family_);
  std::string out = "compose[";
  for (std::size_t i = 0; i < c.parts.size(); ++i) {
    if (i) out += ", ";
    out += c.parts[i].to_string();
  }
  return out + "]";
}

}  // namespace crds
