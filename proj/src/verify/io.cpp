#include "weightlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "json.hpp"

namespace weightlab {

using nlohmann::json;

namespace {

json num(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw PreconditionError("unknown field '" + it.key() + "' in " + where);
  }
}

template <typename T>
void get_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

CheckConfig from_json(const json& j) {
  require(j.is_object(), "check config must be a JSON object");
  only_keys(j,
            {"id", "check", "variant", "grid", "alpha0", "weight", "symbol", "bmo", "c", "exponents", "lambda_grid",
             "test_set", "family", "gamma", "b", "refine", "trend_limit"},
            "check config");
  CheckConfig c;
  try {
    get_if(j, "id", c.id);
    get_if(j, "check", c.check);
    get_if(j, "variant", c.variant);
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      only_keys(g, {"n", "L", "N"}, "grid");
      get_if(g, "n", c.n);
      get_if(g, "L", c.L);
      get_if(g, "N", c.N);
    }
    get_if(j, "alpha0", c.alpha0);
    if (j.contains("weight")) {
      const auto& w = j.at("weight");
      only_keys(w, {"kind", "gamma1", "gamma2", "scale"}, "weight");
      get_if(w, "kind", c.weight.kind);
      get_if(w, "gamma1", c.weight.gamma1);
      get_if(w, "gamma2", c.weight.gamma2);
      get_if(w, "scale", c.weight.scale);
    }
    if (j.contains("symbol")) {
      const auto& s = j.at("symbol");
      if (s.is_string()) {
        c.symbol.id = s.get<std::string>();
      } else {
        only_keys(s, {"id", "s"}, "symbol");
        get_if(s, "id", c.symbol.id);
        get_if(s, "s", c.symbol.s);
      }
    }
    if (j.contains("bmo")) {
      const auto& b = j.at("bmo");
      if (b.is_string()) {
        c.bmo.id = b.get<std::string>();
      } else {
        only_keys(b, {"id", "c"}, "bmo");
        get_if(b, "id", c.bmo.id);
        get_if(b, "c", c.bmo.c);
      }
    }
    get_if(j, "c", c.bmo.c);
    if (j.contains("exponents")) {
      const auto& e = j.at("exponents");
      only_keys(e, {"p", "eta", "delta", "epsilon"}, "exponents");
      get_if(e, "p", c.exponents.p);
      get_if(e, "eta", c.exponents.eta);
      get_if(e, "delta", c.exponents.delta);
      get_if(e, "epsilon", c.exponents.epsilon);
    }
    if (j.contains("lambda_grid")) {
      const auto& l = j.at("lambda_grid");
      only_keys(l, {"count", "lo_pct", "hi_pct"}, "lambda_grid");
      get_if(l, "count", c.lambda_grid.count);
      get_if(l, "lo_pct", c.lambda_grid.lo_pct);
      get_if(l, "hi_pct", c.lambda_grid.hi_pct);
    }
    if (j.contains("test_set")) {
      const auto& t = j.at("test_set");
      only_keys(t, {"count", "kinds", "seed", "min_scale"}, "test_set");
      get_if(t, "count", c.test_set.count);
      get_if(t, "kinds", c.test_set.kinds);
      get_if(t, "seed", c.test_set.seed);
      get_if(t, "min_scale", c.test_set.min_scale);
    }
    get_if(j, "family", c.family);
    get_if(j, "gamma", c.gamma);
    get_if(j, "b", c.b);
    get_if(j, "refine", c.refine);
    get_if(j, "trend_limit", c.trend_limit);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed check config: ") + e.what());
  }
  require(!c.check.empty(), "check config needs a 'check' field");
  return c;
}

json to_json(const CheckConfig& c) {
  return json{{"id", c.id},
              {"check", c.check},
              {"variant", c.variant},
              {"grid", {{"n", c.n}, {"L", num(c.L)}, {"N", c.N}}},
              {"alpha0", num(c.alpha0)},
              {"weight",
               {{"kind", c.weight.kind},
                {"gamma1", num(c.weight.gamma1)},
                {"gamma2", num(c.weight.gamma2)},
                {"scale", num(c.weight.scale)}}},
              {"symbol", {{"id", c.symbol.id}, {"s", num(c.symbol.s)}}},
              {"bmo", {{"id", c.bmo.id}, {"c", num(c.bmo.c)}}},
              {"exponents",
               {{"p", num(c.exponents.p)},
                {"eta", num(c.exponents.eta)},
                {"delta", num(c.exponents.delta)},
                {"epsilon", num(c.exponents.epsilon)}}},
              {"lambda_grid",
               {{"count", c.lambda_grid.count},
                {"lo_pct", num(c.lambda_grid.lo_pct)},
                {"hi_pct", num(c.lambda_grid.hi_pct)}}},
              {"test_set",
               {{"count", c.test_set.count},
                {"kinds", c.test_set.kinds},
                {"seed", c.test_set.seed},
                {"min_scale", num(c.test_set.min_scale)}}},
              {"family", c.family},
              {"gamma", num(c.gamma)},
              {"b", num(c.b)},
              {"refine", c.refine},
              {"trend_limit", num(c.trend_limit)}};
}

template <typename T>
json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) {
    return num(*v);
  } else {
    return *v;
  }
}

}  // namespace

CheckConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw PreconditionError(std::string("config is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

std::vector<CheckConfig> configs_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw PreconditionError(std::string("config is not valid JSON: ") + e.what());
  }
  std::vector<CheckConfig> out;
  if (j.is_object() && j.contains("checks")) j = j.at("checks");
  if (j.is_array()) {
    for (const auto& item : j) out.push_back(from_json(item));
  } else {
    out.push_back(from_json(j));
  }
  require(!out.empty(), "config file lists no checks");
  return out;
}

std::string config_to_json_text(const CheckConfig& config) { return to_json(config).dump(); }

std::string report_to_json_text(const CheckReport& r, int indent) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"input", row.input},
                    {"lambda", opt(row.lambda)},
                    {"lhs", num(row.lhs)},
                    {"rhs", num(row.rhs)},
                    {"ratio", num(row.ratio)},
                    {"vacuous", row.vacuous}});
  }
  json assertions = json::array();
  for (const auto& a : r.assertions) assertions.push_back({{"name", a.name}, {"ok", a.ok}, {"detail", a.detail}});
  json metrics = json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = num(v);
  json plots = json::array();
  for (const auto& p : r.plots) plots.push_back({{"name", p.name}, {"x", p.x_label}, {"y", p.y_label}, {"points", p.points.size()}});
  const json j{{"id", r.id},
               {"check", r.check},
               {"variant", r.variant},
               {"constant", num(r.constant)},
               {"witness", r.witness},
               {"trend",
                {{"points", r.points},
                 {"points_refined", opt(r.points_refined)},
                 {"constant_refined", opt(r.constant_refined)},
                 {"relative_change", opt(r.relative_change)}}},
               {"pinned_bound", opt(r.pinned_bound)},
               {"slack", num(r.slack)},
               {"provenance", r.provenance},
               {"metrics", metrics},
               {"assertions", assertions},
               {"notes", r.notes},
               {"plots", plots},
               {"rows", rows},
               {"pass", r.pass}};
  return j.dump(indent);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string csv_header() { return "check,id,variant,input,lambda,lhs,rhs,ratio,vacuous\n"; }

std::string csv_rows(const CheckReport& r) {
  std::ostringstream os;
  for (const auto& row : r.rows) {
    os << csv_field(r.check) << ',' << csv_field(r.id) << ',' << csv_field(r.variant) << ',' << csv_field(row.input)
       << ',' << (row.lambda ? format_double(*row.lambda) : "") << ',' << format_double(row.lhs) << ','
       << format_double(row.rhs) << ',' << format_double(row.ratio) << ',' << (row.vacuous ? 1 : 0) << '\n';
  }
  return os.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace weightlab
