#include "dioph/json_io.hpp"

namespace dioph {

namespace {

Int int_from_json(const Json& j) {
    if (j.is_string())
        return Int(j.get<std::string>(), 10);
    if (j.is_number_integer())
        return Int(std::to_string(j.get<long long>()), 10);
    throw InvalidArgument("expected an integer, got " + j.dump());
}

} // namespace

Json to_json(const RationalGroupPoint& z) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < z.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < z.dim(); ++j)
            row.push_back(z.u()(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return Json{{"n_dim", z.dim()}, {"u", std::move(rows)}, {"v", z.v().get_str()}};
}

RationalGroupPoint point_from_json(const Json& j) {
    try {
        std::size_t n = j.at("n_dim").get<std::size_t>();
        const Json& rows = j.at("u");
        if (!rows.is_array() || rows.size() != n)
            throw InvalidArgument("u must have n_dim rows");
        IntMatrix u(n);
        for (std::size_t r = 0; r < n; ++r) {
            if (!rows[r].is_array() || rows[r].size() != n)
                throw InvalidArgument("u rows must have n_dim entries");
            for (std::size_t c = 0; c < n; ++c)
                u(r, c) = int_from_json(rows[r][c]);
        }
        return RationalGroupPoint::from_reduced(std::move(u), int_from_json(j.at("v")));
    } catch (const Json::exception& e) {
        throw InvalidArgument(std::string("malformed point: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw InvalidArgument("malformed integer in point " + j.dump());
    }
}

Json rational_json(const Rat& x) {
    return Json{{"num", x.get_num().get_str()}, {"den", x.get_den().get_str()}};
}

Rat rational_from_json(const Json& j) {
    Rat r(int_from_json(j.at("num")), int_from_json(j.at("den")));
    if (r.get_den() == 0)
        throw InvalidArgument("zero denominator");
    r.canonicalize();
    return r;
}

PolynomialFamily family_from_json(const Json& j) {
    try {
        std::size_t n = j.at("n_dim").get<std::size_t>();
        std::vector<Polynomial> polys;
        for (const Json& p : j.at("polys")) {
            std::vector<Polynomial::Term> terms;
            for (const Json& t : p)
                terms.push_back({int_from_json(t.at("coeff")), t.at("exps").get<std::vector<unsigned>>()});
            polys.emplace_back(n, std::move(terms));
        }
        return PolynomialFamily(std::move(polys));
    } catch (const Json::exception& e) {
        throw InvalidArgument(std::string("malformed polynomial file: ") + e.what());
    }
}

} // namespace dioph
