// Copyright 2026 The revgeo Authors
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

#include "revgeo/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace revgeo {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
  return out;
}

JsonOut::~JsonOut() {
  if (wrote_ && stack_.empty()) os_ << '\n';
}

void JsonOut::newline() {
  os_ << '\n';
  for (std::size_t i = 0; i < stack_.size(); ++i) os_ << "  ";
}

void JsonOut::before_value() {
  wrote_ = true;
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (stack_.empty()) return;
  if (stack_.back().count++ > 0) os_ << ',';
  newline();
}

JsonOut& JsonOut::begin_object() {
  before_value();
  os_ << '{';
  stack_.push_back({false, 0});
  return *this;
}

JsonOut& JsonOut::end_object() {
  const bool empty = stack_.back().count == 0;
  stack_.pop_back();
  if (!empty) newline();
  os_ << '}';
  return *this;
}

JsonOut& JsonOut::begin_array() {
  before_value();
  os_ << '[';
  stack_.push_back({true, 0});
  return *this;
}

JsonOut& JsonOut::end_array() {
  const bool empty = stack_.back().count == 0;
  stack_.pop_back();
  if (!empty) newline();
  os_ << ']';
  return *this;
}

JsonOut& JsonOut::key(std::string_view k) {
  before_value();
  os_ << json_escape(k) << ": ";
  after_key_ = true;
  return *this;
}

JsonOut& JsonOut::value(double x) {
  before_value();
  if (std::isfinite(x)) {
    os_ << format_double(x);
  } else {
    os_ << "null";
  }
  return *this;
}

JsonOut& JsonOut::value(long long x) {
  before_value();
  os_ << x;
  return *this;
}

JsonOut& JsonOut::value(bool b) {
  before_value();
  os_ << (b ? "true" : "false");
  return *this;
}

JsonOut& JsonOut::value(std::string_view s) {
  before_value();
  os_ << json_escape(s);
  return *this;
}

JsonOut& JsonOut::raw(std::string_view json) {
  before_value();
  os_ << json;
  return *this;
}

JsonOut& JsonOut::null() {
  before_value();
  os_ << "null";
  return *this;
}

}  // namespace revgeo
