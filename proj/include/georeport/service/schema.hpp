#pragma once

#include <regex>
#include <string>
#include <vector>

#include "georeport/core/json_io.hpp"
#include "georeport/core/utf8.hpp"
#include "georeport/core/validate.hpp"

namespace georeport::service {

// Validator for the JSON Schema subset used in data/openapi.json:
// $ref (local), type, enum, required, properties, additionalProperties,
// propertyNames, items, minItems, maxItems, minLength, pattern, minimum,
// maximum, exclusiveMinimum, exclusiveMaximum, anyOf. Other keywords are ignored.
class SchemaSet {
  public:
    explicit SchemaSet(Json document) : doc_(std::move(document)) {}

    static SchemaSet load(const std::string &path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw NotFoundError("cannot open " + path);
        try {
            return SchemaSet(Json::parse(in));
        } catch (const Json::parse_error &e) {
            throw ParseError(path, e.what());
        }
    }

    const Json &document() const { return doc_; }

    bool has(const std::string &name) const {
        const auto &s = doc_.at("components").at("schemas");
        return s.contains(name);
    }

    const Json &schema(const std::string &name) const {
        const auto &s = doc_.at("components").at("schemas");
        if (!s.contains(name)) throw NotFoundError("schema " + name);
        return s.at(name);
    }

    std::vector<Violation> validate(const Json &instance, const std::string &schema_name) const {
        std::vector<Violation> out;
        check(schema(schema_name), instance, "$", out);
        return out;
    }

  private:
    const Json &resolve(const std::string &ref) const {
        static const std::string prefix = "#/components/schemas/";
        if (ref.rfind(prefix, 0) != 0) throw SchemaError("unsupported $ref " + ref);
        return schema(ref.substr(prefix.size()));
    }

    static bool type_matches(const std::string &t, const Json &v) {
        if (t == "object") return v.is_object();
        if (t == "array") return v.is_array();
        if (t == "string") return v.is_string();
        if (t == "boolean") return v.is_boolean();
        if (t == "null") return v.is_null();
        if (t == "integer") {
            if (v.is_number_integer()) return true;
            if (!v.is_number_float()) return false;
            double d = v.get<double>();
            return std::isfinite(d) && d == std::floor(d);
        }
        if (t == "number") return v.is_number();
        return false;
    }

    static std::string kind_of(const Json &v) {
        if (v.is_object()) return "object";
        if (v.is_array()) return "array";
        if (v.is_string()) return "string";
        if (v.is_boolean()) return "boolean";
        if (v.is_null()) return "null";
        return "number";
    }

    void check(const Json &s, const Json &v, const std::string &path, std::vector<Violation> &out) const {
        if (!s.is_object()) return;
        if (auto it = s.find("$ref"); it != s.end()) {
            check(resolve(it->get<std::string>()), v, path, out);
            return;
        }
        if (auto it = s.find("anyOf"); it != s.end()) {
            for (const auto &alt : *it) {
                std::vector<Violation> tmp;
                check(alt, v, path, tmp);
                if (tmp.empty()) return;
            }
            out.push_back({path, "does not match any allowed form"});
            return;
        }
        if (auto it = s.find("type"); it != s.end()) {
            bool ok = false;
            std::string names;
            if (it->is_array()) {
                for (const auto &t : *it) {
                    ok = ok || type_matches(t.get<std::string>(), v);
                    names += (names.empty() ? "" : " or ") + t.get<std::string>();
                }
            } else {
                names = it->get<std::string>();
                ok = type_matches(names, v);
            }
            if (!ok) {
                out.push_back({path, "expected " + names + ", got " + kind_of(v)});
                return;
            }
        }
        if (auto it = s.find("enum"); it != s.end()) {
            if (std::find(it->begin(), it->end(), v) == it->end()) out.push_back({path, "value not allowed: " + v.dump()});
        }
        if (v.is_number()) check_number(s, v.get<double>(), path, out);
        if (v.is_string()) check_string(s, v.get<std::string>(), path, out);
        if (v.is_array()) check_array(s, v, path, out);
        if (v.is_object()) check_object(s, v, path, out);
    }

    static void check_number(const Json &s, double d, const std::string &path, std::vector<Violation> &out) {
        auto bound = [&](const char *key, auto fails, const char *what) {
            if (auto it = s.find(key); it != s.end() && fails(d, it->template get<double>()))
                out.push_back({path, fmt::format("must be {} {}", what, it->dump())});
        };
        bound("minimum", [](double a, double b) { return a < b; }, ">=");
        bound("maximum", [](double a, double b) { return a > b; }, "<=");
        bound("exclusiveMinimum", [](double a, double b) { return a <= b; }, ">");
        bound("exclusiveMaximum", [](double a, double b) { return a >= b; }, "<");
    }

    static void check_string(const Json &s, const std::string &v, const std::string &path, std::vector<Violation> &out) {
        if (auto it = s.find("minLength"); it != s.end()) {
            std::size_t n = 0, pos = 0;
            while (pos < v.size()) {
                utf8::next(v, pos);
                ++n;
            }
            if (n < it->get<std::size_t>()) out.push_back({path, "shorter than " + it->dump() + " characters"});
        }
        if (auto it = s.find("pattern"); it != s.end()) {
            if (!std::regex_search(v, std::regex(it->get<std::string>(), std::regex::ECMAScript)))
                out.push_back({path, "does not match pattern " + it->get<std::string>()});
        }
    }

    void check_array(const Json &s, const Json &v, const std::string &path, std::vector<Violation> &out) const {
        if (auto it = s.find("minItems"); it != s.end() && v.size() < it->get<std::size_t>())
            out.push_back({path, "needs at least " + it->dump() + " items"});
        if (auto it = s.find("maxItems"); it != s.end() && v.size() > it->get<std::size_t>())
            out.push_back({path, "allows at most " + it->dump() + " items"});
        if (auto it = s.find("items"); it != s.end())
            for (std::size_t i = 0; i < v.size(); ++i) check(*it, v[i], json_io::index_path(path, i), out);
    }

    void check_object(const Json &s, const Json &v, const std::string &path, std::vector<Violation> &out) const {
        if (auto it = s.find("required"); it != s.end())
            for (const auto &key : *it)
                if (!v.contains(key.get<std::string>()))
                    out.push_back({json_io::join_path(path, key.get<std::string>()), "required"});
        const Json *props = s.contains("properties") ? &s.at("properties") : nullptr;
        const Json *additional = s.contains("additionalProperties") ? &s.at("additionalProperties") : nullptr;
        const Json *names = s.contains("propertyNames") ? &s.at("propertyNames") : nullptr;
        for (const auto &[key, value] : v.items()) {
            const auto child = json_io::join_path(path, key);
            if (names) {
                std::vector<Violation> tmp;
                check(*names, Json(key), child, tmp);
                if (!tmp.empty()) out.push_back({child, "property name not allowed"});
            }
            if (props && props->contains(key)) {
                check(props->at(key), value, child, out);
            } else if (additional) {
                if (additional->is_boolean()) {
                    if (!additional->get<bool>()) out.push_back({child, "unknown property"});
                } else {
                    check(*additional, value, child, out);
                }
            }
        }
    }

    Json doc_;
};

} // namespace georeport::service
