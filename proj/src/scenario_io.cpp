#include "qflow/scenario_io.hpp"

#include <set>

#include <json.hpp>

namespace qflow {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "qflow-scenario-1";

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] void fail(const std::string& msg, const std::string& path) {
    throw ScenarioParseError(msg + " (at " + path + ")", 0, 0, path);
}

Complex parse_complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        fail("complex number must be a [re, im] pair of decimals", path);
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

std::vector<Complex> parse_amp_list(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) {
        fail("amplitude list must be a nonempty array", path);
    }
    std::vector<Complex> amp;
    for (std::size_t i = 0; i < j.size(); ++i) {
        amp.push_back(parse_complex(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return amp;
}

// A state is {"amp": [...]} over the given dims or {"product": [[...], ...]}
// with one per-factor amplitude list each.
MultiState parse_state(const json& j, const std::vector<long>& dims,
                       const std::string& path) {
    if (!j.is_object()) {
        fail("state must be an object with \"amp\" or \"product\"", path);
    }
    FactorSpace space(dims);
    if (j.contains("amp")) {
        std::vector<Complex> amp = parse_amp_list(j.at("amp"), path + ".amp");
        if (static_cast<long>(amp.size()) != space.total()) {
            fail("amplitude list length " + std::to_string(amp.size()) +
                     " does not match total dimension " + std::to_string(space.total()),
                 path + ".amp");
        }
        return MultiState(space, std::move(amp));
    }
    if (j.contains("product")) {
        const json& parts = j.at("product");
        if (!parts.is_array() || parts.size() != dims.size()) {
            fail("product must list one amplitude list per factor", path + ".product");
        }
        std::vector<MultiState> factors;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            std::string p = path + ".product[" + std::to_string(i) + "]";
            std::vector<Complex> amp = parse_amp_list(parts[i], p);
            if (static_cast<long>(amp.size()) != dims[i]) {
                fail("factor amplitude list has wrong length", p);
            }
            factors.push_back(MultiState::single(std::move(amp)));
        }
        return tensor(factors);
    }
    fail("state needs either \"amp\" or \"product\"", path);
}

json dump_state(const MultiState& s) {
    json amp = json::array();
    for (long i = 0; i < s.dim(); ++i) {
        amp.push_back(json::array({s.amp(i).real(), s.amp(i).imag()}));
    }
    return json{{"amp", amp}};
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ScenarioParseError("malformed scenario file at line " +
                                     std::to_string(line) + ", column " +
                                     std::to_string(col) + ": " + e.what(),
                                 line, col, "");
    }

    if (!j.is_object() || !j.contains("version") || !j.at("version").is_string()) {
        fail("missing version tag", "version");
    }
    if (j.at("version").get<std::string>() != kVersion) {
        fail("unrecognized version tag \"" + j.at("version").get<std::string>() +
                 "\"; expected \"" + std::string(kVersion) + "\"",
             "version");
    }

    Scenario scn;
    if (!j.contains("dims") || !j.at("dims").is_array() || j.at("dims").empty()) {
        fail("dims must be a nonempty array of positive integers", "dims");
    }
    std::vector<long> dims;
    for (const auto& d : j.at("dims")) {
        if (!d.is_number_integer() || d.get<long>() < 1) {
            fail("dims entries must be positive integers", "dims");
        }
        dims.push_back(d.get<long>());
    }
    try {
        scn.space = FactorSpace(dims);
    } catch (const DimensionError& e) {
        fail(e.what(), "dims");
    }

    if (!j.contains("input") || !j.at("input").is_object()) {
        fail("missing input object", "input");
    }
    const json& input = j.at("input");
    if (!input.contains("factor") || !input.at("factor").is_number_integer()) {
        fail("input.factor must be an integer", "input.factor");
    }
    scn.input_factor = input.at("factor").get<int>();
    if (scn.input_factor < 1 || scn.input_factor > scn.space.factor_count()) {
        fail("input.factor out of range", "input.factor");
    }
    scn.input_state = parse_state(input.at("state"),
                                  {scn.space.dim(scn.input_factor)}, "input.state");

    std::vector<long> rest_dims;
    for (int f = 1; f <= scn.space.factor_count(); ++f) {
        if (f != scn.input_factor) {
            rest_dims.push_back(scn.space.dim(f));
        }
    }
    if (!j.contains("rest")) {
        fail("missing rest object", "rest");
    }
    scn.rest_state = parse_state(j.at("rest"), rest_dims, "rest");

    if (!j.contains("boxes") || !j.at("boxes").is_array()) {
        fail("boxes must be an array", "boxes");
    }
    std::set<int> times;
    for (std::size_t i = 0; i < j.at("boxes").size(); ++i) {
        const json& bj = j.at("boxes")[i];
        std::string bp = "boxes[" + std::to_string(i) + "]";
        Box box;
        if (!bj.is_object() || !bj.contains("time") || !bj.contains("pair")) {
            fail("box needs time, pair and omega", bp);
        }
        if (!bj.at("time").is_number_integer() || bj.at("time").get<int>() < 1) {
            fail("box time must be a positive integer", bp + ".time");
        }
        box.time = bj.at("time").get<int>();
        if (!times.insert(box.time).second) {
            fail("duplicate time rank " + std::to_string(box.time), bp + ".time");
        }
        const json& pair = bj.at("pair");
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
            !pair[1].is_number_integer()) {
            fail("box pair must be [i, j]", bp + ".pair");
        }
        box.a = pair[0].get<int>();
        box.b = pair[1].get<int>();
        if (box.a < 1 || box.b <= box.a || box.b > scn.space.factor_count()) {
            fail("box pair must satisfy 1 <= i < j <= n", bp + ".pair");
        }
        std::vector<long> pair_dims{scn.space.dim(box.a), scn.space.dim(box.b)};
        if (!bj.contains("omega")) {
            fail("box needs an omega state", bp + ".omega");
        }
        box.omega = parse_state(bj.at("omega"), pair_dims, bp + ".omega");
        if (bj.contains("lambda")) {
            box.lambda = parse_state(bj.at("lambda"), pair_dims, bp + ".lambda");
        }
        scn.boxes.push_back(std::move(box));
    }

    try {
        scn.validate();
    } catch (const DimensionError& e) {
        fail(e.what(), "");
    }
    return scn;
}

std::string serialize_scenario(const Scenario& scn) {
    json j;
    j["version"] = kVersion;
    j["dims"] = scn.space.dims();
    j["input"] = json{{"factor", scn.input_factor},
                      {"state", dump_state(scn.input_state)}};
    j["rest"] = dump_state(scn.rest_state);
    json boxes = json::array();
    for (const Box& box : scn.boxes) {
        json bj;
        bj["time"] = box.time;
        bj["pair"] = json::array({box.a, box.b});
        bj["omega"] = dump_state(box.omega);
        if (box.lambda) {
            bj["lambda"] = dump_state(*box.lambda);
        }
        boxes.push_back(std::move(bj));
    }
    j["boxes"] = std::move(boxes);
    return j.dump(2) + "\n";
}

bool scenario_equal(const Scenario& a, const Scenario& b) {
    auto state_eq = [](const MultiState& x, const MultiState& y) {
        return x.space() == y.space() && x.amp() == y.amp();
    };
    if (!(a.space == b.space) || a.input_factor != b.input_factor ||
        !state_eq(a.input_state, b.input_state) ||
        !state_eq(a.rest_state, b.rest_state) || a.boxes.size() != b.boxes.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.boxes.size(); ++i) {
        const Box& x = a.boxes[i];
        const Box& y = b.boxes[i];
        if (x.time != y.time || x.a != y.a || x.b != y.b ||
            !state_eq(x.omega, y.omega) || x.lambda.has_value() != y.lambda.has_value() ||
            (x.lambda && !state_eq(*x.lambda, *y.lambda))) {
            return false;
        }
    }
    return true;
}

} // namespace qflow
