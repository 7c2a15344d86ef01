#ifndef BIPPR_RECORD_HPP
#define BIPPR_RECORD_HPP

#include <chrono>
#include <string>

#include <json.hpp>

namespace bippr {

using Json = nlohmann::ordered_json;

// One result per line, stable field order.
struct RunRecord {
    std::string command;
    std::string graph;
    Json params = Json::object();
    std::uint64_t seed = 0;
    Json estimates = Json::object();
    Json counters = Json::object();
    double wall_ms = 0.0;

    Json to_json() const
    {
        Json j;
        j["command"] = command;
        j["graph"] = graph;
        j["params"] = params;
        j["seed"] = seed;
        j["estimates"] = estimates;
        j["counters"] = counters;
        j["wall_ms"] = wall_ms;
        return j;
    }

    std::string to_line() const { return to_json().dump(); }

    static RunRecord from_json(const Json& j)
    {
        RunRecord r;
        r.command = j.at("command").get<std::string>();
        r.graph = j.at("graph").get<std::string>();
        r.params = j.at("params");
        r.seed = j.at("seed").get<std::uint64_t>();
        r.estimates = j.at("estimates");
        r.counters = j.at("counters");
        r.wall_ms = j.at("wall_ms").get<double>();
        return r;
    }

    static RunRecord from_line(const std::string& line) { return from_json(Json::parse(line)); }
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace bippr

#endif
