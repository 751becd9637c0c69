// Copyright 2026 The dynsched Authors
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

#include "dynsched/trace.hpp"

#include <map>
#include <random>
#include <sstream>

namespace dynsched {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw InputError("trace line " + std::to_string(line_no) + ": " + what);
}

Rational parse_rational_or_fail(const std::string& tok, int line_no) {
  auto r = Rational::parse(tok);
  if (!r) fail(line_no, "bad rational '" + tok + "'");
  return *r;
}

}  // namespace

EventTrace parse_trace(const std::string& text) {
  EventTrace trace;
  bool have_objective = false, have_epsilon = false, have_pmax = false,
       have_speeds = false, in_events = false;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos) {
      line.erase(pos);
    }
    std::vector<std::string> tok = split_ws(line);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    if (key == "objective" || key == "epsilon" || key == "pmax" ||
        key == "speeds") {
      if (in_events) fail(line_no, "header line after events");
      if (key == "objective") {
        if (have_objective) fail(line_no, "duplicate objective");
        if (tok.size() != 2 || (tok[1] != "cmax" && tok[1] != "cmin")) {
          fail(line_no, "objective must be cmax or cmin");
        }
        trace.objective =
            tok[1] == "cmax" ? Objective::kMakespan : Objective::kCovering;
        have_objective = true;
      } else if (key == "epsilon") {
        if (have_epsilon) fail(line_no, "duplicate epsilon");
        if (tok.size() != 2) fail(line_no, "epsilon needs one value");
        trace.epsilon = parse_rational_or_fail(tok[1], line_no);
        if (trace.epsilon.sign() <= 0 ||
            !(Rational(1) / trace.epsilon).is_integer()) {
          fail(line_no, "1/epsilon must be a positive integer");
        }
        have_epsilon = true;
      } else if (key == "pmax") {
        if (have_pmax) fail(line_no, "duplicate pmax");
        if (tok.size() != 2) fail(line_no, "pmax needs one value");
        trace.pmax = parse_rational_or_fail(tok[1], line_no);
        if (trace.pmax.sign() <= 0) fail(line_no, "pmax must be positive");
        have_pmax = true;
      } else {
        if (have_speeds) fail(line_no, "duplicate speeds");
        if (tok.size() < 2) fail(line_no, "speeds needs at least one value");
        for (std::size_t i = 1; i < tok.size(); ++i) {
          Rational s = parse_rational_or_fail(tok[i], line_no);
          if (s.sign() <= 0) fail(line_no, "speed must be positive");
          trace.speeds.push_back(s);
        }
        have_speeds = true;
      }
      continue;
    }
    if (key == "insert" || key == "remove") {
      if (!(have_objective && have_epsilon && have_pmax && have_speeds)) {
        fail(line_no, "event before a complete header");
      }
      in_events = true;
      if (tok.size() != 2) fail(line_no, "event needs exactly one size");
      Rational size = parse_rational_or_fail(tok[1], line_no);
      if (size.sign() <= 0) fail(line_no, "size must be positive");
      if (size > trace.pmax) fail(line_no, "size exceeds pmax");
      trace.events.push_back(TraceEvent{key == "insert", size});
      continue;
    }
    fail(line_no, "unknown directive '" + key + "'");
  }
  if (!(have_objective && have_epsilon && have_pmax && have_speeds)) {
    throw InputError("trace is missing header lines");
  }
  return trace;
}

std::string format_trace(const EventTrace& trace) {
  std::ostringstream out;
  out << "objective " << objective_name(trace.objective) << "\n";
  out << "epsilon " << trace.epsilon.str() << "\n";
  out << "pmax " << trace.pmax.str() << "\n";
  out << "speeds";
  for (const Rational& s : trace.speeds) out << ' ' << s.str();
  out << "\n";
  for (const TraceEvent& e : trace.events) {
    out << (e.insert ? "insert " : "remove ") << e.size.str() << "\n";
  }
  return out.str();
}

EventTrace generate(const GenParams& params) {
  if (params.machines <= 0 || params.steps < 0 || params.pmax.sign() <= 0) {
    throw InputError("generate: parameters must be positive");
  }
  if (params.small_prob.sign() < 0 || params.small_prob > Rational(1)) {
    throw InputError("generate: small_prob must be within [0, 1]");
  }
  EventTrace trace;
  trace.objective = params.objective;
  trace.epsilon = params.epsilon;
  trace.pmax = params.pmax;

  std::mt19937_64 rng(params.seed);
  auto uniform = [&rng](long long lo, long long hi) {
    return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(
                                                   hi - lo + 1));
  };

  PowerGrid grid(params.epsilon);
  for (int i = 0; i < params.machines; ++i) {
    trace.speeds.push_back(grid.pow(uniform(0, 3)));
  }

  const Rational small_cut = params.epsilon * params.pmax;
  const long long large_lo = small_cut.ceil().convert_to<long long>();
  const long long large_hi = params.pmax.floor().convert_to<long long>();
  if (large_lo > large_hi) {
    throw InputError("generate: no integer size in [eps*pmax, pmax]");
  }

  std::map<Rational, long long> live;
  long long live_count = 0;
  for (int step = 0; step < params.steps; ++step) {
    bool do_insert;
    if (live_count == 0) {
      do_insert = true;
    } else if (params.max_live > 0 && live_count >= params.max_live) {
      do_insert = false;
    } else {
      do_insert = uniform(0, 99) < 55;
    }
    if (do_insert) {
      Rational size;
      bool small = Rational(uniform(0, 999), 1000) < params.small_prob;
      if (small && small_cut <= params.pmax) {
        size = Rational(uniform(1, 15), 16) * small_cut;
      } else {
        size = Rational(uniform(large_lo, large_hi));
      }
      trace.events.push_back(TraceEvent{true, size});
      live[size] += 1;
      ++live_count;
    } else {
      long long pick = uniform(0, live_count - 1);
      for (auto it = live.begin(); it != live.end(); ++it) {
        if (pick < it->second) {
          trace.events.push_back(TraceEvent{false, it->first});
          it->second -= 1;
          --live_count;
          if (it->second == 0) live.erase(it);
          break;
        }
        pick -= it->second;
      }
    }
  }
  return trace;
}

}  // namespace dynsched
