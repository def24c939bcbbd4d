#include "subriem/carnot/algebra_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "subriem/errors.hpp"

namespace subriem::carnot {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key))
        throw MalformedInput(where + ": missing field \"" + key + "\"");
    return obj.at(key);
}

int as_int(const json& v, const std::string& where)
{
    if (!v.is_number_integer())
        throw MalformedInput(where + ": expected an integer");
    return v.get<int>();
}

double as_double(const json& v, const std::string& where)
{
    if (!v.is_number())
        throw MalformedInput(where + ": expected a number");
    return v.get<double>();
}

Generator as_generator(const json& v, const std::string& where)
{
    if (!v.is_array() || v.size() != 2)
        throw MalformedInput(where + ": expected [layer, index]");
    return {as_int(v[0], where + "[0]") - 1, as_int(v[1], where + "[1]") - 1};
}

} // namespace

GradedLieAlgebra parse_algebra(std::string_view json_text, bool validate)
{
    json doc;
    try {
        doc = json::parse(json_text);
    }
    catch (const json::parse_error& e) {
        throw MalformedInput(std::string("JSON parse error: ") + e.what());
    }
    const json& dims_j = field(doc, "dims", "algebra");
    if (!dims_j.is_array() || dims_j.empty())
        throw MalformedInput("algebra.dims: expected a nonempty array");
    std::vector<int> dims;
    for (std::size_t i = 0; i < dims_j.size(); ++i)
        dims.push_back(as_int(dims_j[i], "algebra.dims[" + std::to_string(i) + "]"));
    if (doc.contains("step") && as_int(doc["step"], "algebra.step") != static_cast<int>(dims.size()))
        throw MalformedInput("algebra.step does not match the length of algebra.dims");

    std::vector<BracketEntry> entries;
    if (doc.contains("brackets")) {
        const json& br = doc["brackets"];
        if (!br.is_array())
            throw MalformedInput("algebra.brackets: expected an array");
        for (std::size_t i = 0; i < br.size(); ++i) {
            const std::string where = "algebra.brackets[" + std::to_string(i) + "]";
            BracketEntry e;
            e.a = as_generator(field(br[i], "a", where), where + ".a");
            e.b = as_generator(field(br[i], "b", where), where + ".b");
            const json& out = field(br[i], "out", where);
            if (!out.is_array())
                throw MalformedInput(where + ".out: expected an array");
            for (std::size_t k = 0; k < out.size(); ++k) {
                const std::string w = where + ".out[" + std::to_string(k) + "]";
                if (!out[k].is_array() || out[k].size() != 3)
                    throw MalformedInput(w + ": expected [layer, index, coeff]");
                e.out.push_back({{as_int(out[k][0], w) - 1, as_int(out[k][1], w) - 1}, as_double(out[k][2], w)});
            }
            entries.push_back(std::move(e));
        }
    }
    GradedLieAlgebra alg(std::move(dims), std::move(entries));
    if (validate) {
        const auto report = validate_algebra(alg);
        if (!report.ok())
            throw MalformedInput("invalid algebra:\n" + report.summary());
    }
    return alg;
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw MalformedInput("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

GradedLieAlgebra load_algebra(const std::filesystem::path& path, bool validate)
{
    try {
        return parse_algebra(read_text_file(path), validate);
    }
    catch (const MalformedInput& e) {
        throw MalformedInput(path.string() + ": " + e.what());
    }
}

std::string algebra_to_json(const GradedLieAlgebra& alg)
{
    json doc;
    doc["step"] = alg.step();
    doc["dims"] = std::vector<int>(alg.dims().begin(), alg.dims().end());
    json br = json::array();
    for (const auto& e : alg.entries()) {
        json out = json::array();
        for (const auto& [g, c] : e.out)
            out.push_back({g.layer + 1, g.index + 1, c});
        br.push_back({{"a", {e.a.layer + 1, e.a.index + 1}}, {"b", {e.b.layer + 1, e.b.index + 1}}, {"out", out}});
    }
    doc["brackets"] = br;
    return doc.dump(2);
}

} // namespace subriem::carnot
