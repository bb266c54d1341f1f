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

#ifndef REVGEO_IO_HPP_
#define REVGEO_IO_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace revgeo {

// 17 significant digits, round-trip safe. Non-finite values print as
// inf, -inf or nan.
std::string format_double(double x);

// Streaming JSON emitter with deterministic layout (two-space indent).
// Non-finite doubles are written as null.
class JsonOut {
 public:
  explicit JsonOut(std::ostream& os) : os_(os) {}
  ~JsonOut();

  JsonOut& begin_object();
  JsonOut& end_object();
  JsonOut& begin_array();
  JsonOut& end_array();
  JsonOut& key(std::string_view k);
  JsonOut& value(double x);
  JsonOut& value(long long x);
  JsonOut& value(int x) { return value(static_cast<long long>(x)); }
  JsonOut& value(long x) { return value(static_cast<long long>(x)); }
  JsonOut& value(bool b);
  JsonOut& value(std::string_view s);
  JsonOut& value(const char* s) { return value(std::string_view(s)); }
  JsonOut& null();
  // Pre-serialized JSON value, inserted verbatim.
  JsonOut& raw(std::string_view json);

 private:
  void before_value();
  void newline();

  struct Level {
    bool array;
    int count;
  };
  std::ostream& os_;
  std::vector<Level> stack_;
  bool after_key_ = false;
  bool wrote_ = false;
};

std::string json_escape(std::string_view s);

}  // namespace revgeo

#endif  // REVGEO_IO_HPP_
