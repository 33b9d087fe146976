#include "balfilt/io.hpp"

#include <cstdint>
#include <cstdio>

namespace balfilt {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw input_error(path + ": " + what);
}

const Json& expect_array(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

std::size_t expect_size(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0)
        fail(path, "expected a positive integer");
    return j.get<std::size_t>();
}

}  // namespace

Rational rational_from_json(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(Int(j.get<std::int64_t>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    fail(path, "expected an integer or a \"p/q\" string (floats are not accepted)");
}

Json rational_to_json(const Rational& r) { return Json(format_rational(r)); }

QVec vector_from_json(const Json& j, const std::string& path) {
    expect_array(j, path);
    QVec v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

Json vector_to_json(const QVec& v) {
    Json out = Json::array();
    for (const Rational& x : v) out.push_back(rational_to_json(x));
    return out;
}

Json matrix_to_json(const QMat& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i)));
    return out;
}

Json integer_matrix_to_json(const QMat& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rational& x = m.at(i, j);
            if (is_integer(x) && abs(numerator(x)) <= Int(1) << 53)
                row.push_back(numerator(x).convert_to<std::int64_t>());
            else
                row.push_back(format_rational(x));
        }
        out.push_back(std::move(row));
    }
    return out;
}

PolarisedState state_from_json(const Json& doc) {
    if (!doc.is_object()) fail("$", "expected a JSON object");
    if (!doc.contains("rank")) fail("rank", "missing");
    std::size_t rank = expect_size(doc["rank"], "rank");

    QVec polarisation = zero_vector(rank);
    if (doc.contains("polarisation")) {
        polarisation = vector_from_json(doc["polarisation"], "polarisation");
        if (polarisation.size() != rank) fail("polarisation", "length differs from rank");
    }

    QMat gram = QMat::identity(rank);
    if (doc.contains("gram")) {
        const Json& g = expect_array(doc["gram"], "gram");
        if (g.size() != rank) fail("gram", "row count differs from rank");
        gram = QMat(rank, rank);
        for (std::size_t i = 0; i < rank; ++i) {
            QVec row = vector_from_json(g[i], "gram[" + std::to_string(i) + "]");
            if (row.size() != rank) fail("gram[" + std::to_string(i) + "]", "length differs from rank");
            for (std::size_t j = 0; j < rank; ++j) gram.at(i, j) = row[j];
        }
    }
    InnerProduct metric = [&] {
        try {
            return InnerProduct(std::move(gram));
        } catch (const input_error& e) {
            fail("gram", e.what());
        }
    }();

    const bool has_chars = doc.contains("characters");
    const bool has_point = doc.contains("point");
    if (has_chars == has_point)
        fail("$", "exactly one of \"characters\" and \"point\" is required");

    if (has_point) {
        const Json& pt = doc["point"];
        if (!pt.is_object() || !pt.contains("weights") || !pt.contains("coordinates"))
            fail("point", "expected {\"weights\": ..., \"coordinates\": ...}");
        const Json& w = expect_array(pt["weights"], "point.weights");
        std::vector<QVec> rows;
        for (std::size_t i = 0; i < w.size(); ++i) {
            QVec row = vector_from_json(w[i], "point.weights[" + std::to_string(i) + "]");
            if (row.size() != rank)
                fail("point.weights[" + std::to_string(i) + "]", "length differs from rank");
            for (const Rational& x : row)
                if (!is_integer(x))
                    fail("point.weights[" + std::to_string(i) + "]", "weights must be integers");
            rows.push_back(std::move(row));
        }
        QVec coords = vector_from_json(pt["coordinates"], "point.coordinates");
        if (coords.size() != rows.size())
            fail("point.coordinates", "one coordinate per weight row required");
        QMat weights = rows.empty() ? QMat(0, rank) : QMat::from_rows(rows);
        try {
            return state_of_point(weights, coords, std::move(polarisation), std::move(metric));
        } catch (const input_error& e) {
            fail("point", e.what());
        }
    }

    const Json& chars = expect_array(doc["characters"], "characters");
    std::vector<QVec> characters;
    for (std::size_t i = 0; i < chars.size(); ++i) {
        const std::string path = "characters[" + std::to_string(i) + "]";
        QVec chi = vector_from_json(chars[i], path);
        if (chi.size() != rank) fail(path, "length differs from rank");
        for (const Rational& x : chi)
            if (!is_integer(x)) fail(path, "characters must be integer vectors");
        if (is_zero(chi)) fail(path, "zero character");
        characters.push_back(std::move(chi));
    }
    return PolarisedState(rank, std::move(characters), std::move(polarisation), std::move(metric));
}

PolarisedState parse_state(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("invalid JSON: ") + e.what());
    }
    return state_from_json(doc);
}

Json state_to_json(const PolarisedState& s) {
    Json out;
    out["rank"] = s.rank();
    Json chars = Json::array();
    for (const QVec& chi : s.characters()) {
        Json row = Json::array();
        for (const Rational& x : chi) {
            if (abs(numerator(x)) <= Int(1) << 53)
                row.push_back(numerator(x).convert_to<std::int64_t>());
            else
                row.push_back(format_rational(x));
        }
        chars.push_back(std::move(row));
    }
    out["characters"] = std::move(chars);
    out["polarisation"] = vector_to_json(s.polarisation());
    out["gram"] = matrix_to_json(s.metric().gram());
    return out;
}

Json slice_to_json(const SliceResult& sl) {
    Json out;
    Json face = Json::array();
    for (std::size_t i : sl.face) face.push_back(i);
    out["face"] = std::move(face);
    Json kernel = Json::array();
    for (const QVec& v : sl.kernel_basis) kernel.push_back(vector_to_json(v));
    out["kernel_basis"] = std::move(kernel);
    out["quotient"] = integer_matrix_to_json(sl.quotient);
    out["embedding"] = matrix_to_json(sl.embedding);
    out["state"] = state_to_json(sl.sliced);
    return out;
}

Json balanced_to_json(const BalancedResult& b) {
    Json out;
    out["lambda"] = Json{{"intrinsic", vector_to_json(b.lambda_intrinsic)},
                         {"ambient", vector_to_json(b.lambda_ambient)}};
    Json active = Json::array();
    for (std::size_t i : b.active_set) active.push_back(i);
    out["active_set"] = std::move(active);
    Json kkt = Json::array();
    for (const Rational& c : b.kkt_coefficients) kkt.push_back(rational_to_json(c));
    out["kkt_coefficients"] = std::move(kkt);
    out["norm_sq"] = rational_to_json(b.norm_sq);
    out["slice"] = slice_to_json(b.slice);
    return out;
}

Json sequence_to_json(const SequentialFiltration& seq) {
    Json out = Json::array();
    for (const Filtration& f : seq.terms) out.push_back(vector_to_json(f.covector));
    return out;
}

SequentialFiltration sequence_from_json(const Json& doc, std::size_t rank) {
    const Json* terms = &doc;
    if (doc.is_object()) {
        if (!doc.contains("terms")) fail("terms", "missing");
        terms = &doc["terms"];
    }
    expect_array(*terms, "terms");
    SequentialFiltration seq;
    for (std::size_t i = 0; i < terms->size(); ++i) {
        QVec v = vector_from_json((*terms)[i], "terms[" + std::to_string(i) + "]");
        if (v.size() != rank) fail("terms[" + std::to_string(i) + "]", "length differs from rank");
        seq.terms.push_back(Filtration{std::move(v)});
    }
    return seq;
}

Json chain_to_json(const ChainTrace& trace) {
    Json out;
    out["initial_slice"] = slice_to_json(trace.initial_slice);
    Json steps = Json::array();
    for (const ChainStep& step : trace.steps) {
        Json s;
        s["index"] = step.index;
        s["state"] = state_to_json(step.state);
        s["lambda"] = Json{{"intrinsic", vector_to_json(step.balanced.lambda_intrinsic)},
                           {"state", vector_to_json(step.balanced.lambda_ambient)},
                           {"original", vector_to_json(step.lambda_original)}};
        Json active = Json::array();
        for (std::size_t i : step.balanced.active_set) active.push_back(i);
        s["active_set"] = std::move(active);
        Json kkt = Json::array();
        for (const Rational& c : step.balanced.kkt_coefficients)
            kkt.push_back(rational_to_json(c));
        s["kkt_coefficients"] = std::move(kkt);
        s["norm_sq"] = rational_to_json(step.balanced.norm_sq);
        s["cumulative_embedding"] = matrix_to_json(step.cumulative_embedding);
        s["terminal"] = !step.iterated.has_value();
        if (step.iterated) s["iterated_state"] = state_to_json(*step.iterated);
        if (step.next_slice) s["slice"] = slice_to_json(*step.next_slice);
        steps.push_back(std::move(s));
    }
    out["steps"] = std::move(steps);
    out["sequence"] = sequence_to_json(trace.sequence);
    return out;
}

Json flow_result_to_json(const flow::FlowResult& r) {
    Json out;
    out["tail_max"] = r.verdict.tail_max;
    out["drift"] = r.verdict.drift;
    out["bounded"] = r.verdict.bounded;
    out["grid_points"] = r.tau.size();
    out["tau_end"] = r.tau.empty() ? 0.0 : r.tau.back();
    return out;
}

std::string input_digest(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

Json make_report(const std::string& command, Json options, const std::string& digest,
                 Json result) {
    Json report;
    report["tool"] = kToolName;
    report["version"] = kToolVersion;
    report["command"] = command;
    report["options"] = std::move(options);
    report["input_digest"] = digest;
    report["result"] = std::move(result);
    return report;
}

}  // namespace balfilt
