#include "bellvol/polytope.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace bellvol {

namespace {

void write_vector(std::ostream& os, const RationalVector& v) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) os << ' ';
        os << to_string(v[k]);
    }
}

bool next_content_line(std::istream& is, std::string& line) {
    while (std::getline(is, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        return true;
    }
    return false;
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
}

RationalVector parse_coords(const std::vector<std::string>& tok, std::size_t begin, std::size_t end,
                            int dim) {
    if (static_cast<int>(end - begin) != dim)
        throw DomainError("expected " + std::to_string(dim) + " coordinates");
    RationalVector v;
    for (std::size_t k = begin; k < end; ++k) v.push_back(parse_rational(tok[k]));
    return v;
}

std::size_t parse_count(const std::string& s) {
    try {
        std::size_t pos = 0;
        const long long n = std::stoll(s, &pos);
        if (pos != s.size() || n < 0) throw DomainError("bad count '" + s + "'");
        return static_cast<std::size_t>(n);
    } catch (const std::logic_error&) {
        throw DomainError("bad count '" + s + "'");
    }
}

}  // namespace

void write_polytope(std::ostream& os, const RationalPolytope& p) {
    os << "polytope " << p.dim << '\n';
    if (p.vertices) {
        os << "vertices " << p.vertices->size() << '\n';
        for (const auto& v : *p.vertices) {
            write_vector(os, v);
            os << '\n';
        }
    }
    if (p.halfspaces) {
        os << "halfspaces " << p.halfspaces->size() << '\n';
        for (const auto& h : *p.halfspaces) {
            write_vector(os, h.normal);
            os << " <= " << to_string(h.offset) << '\n';
        }
    }
    if (!p.equalities.empty()) {
        os << "equalities " << p.equalities.size() << '\n';
        for (const auto& e : p.equalities) {
            write_vector(os, e.normal);
            os << " = " << to_string(e.offset) << '\n';
        }
    }
    os << "end\n";
}

RationalPolytope read_polytope(std::istream& is) {
    std::string line;
    if (!next_content_line(is, line)) throw DomainError("empty polytope input");
    auto head = tokens(line);
    if (head.size() != 2 || head[0] != "polytope") throw DomainError("expected 'polytope <dim>' header");
    RationalPolytope p;
    const auto dim = parse_count(head[1]);
    if (dim == 0) throw DomainError("polytope dimension must be positive");
    p.dim = static_cast<int>(dim);

    while (next_content_line(is, line)) {
        auto sec = tokens(line);
        if (sec.size() == 1 && sec[0] == "end") return p;
        if (sec.size() != 2) throw DomainError("expected a section header, got '" + line + "'");
        const std::size_t count = parse_count(sec[1]);
        const std::string relation = sec[0] == "halfspaces" ? "<=" : "=";
        if (sec[0] == "vertices") {
            std::vector<RationalVector> vs;
            for (std::size_t k = 0; k < count; ++k) {
                if (!next_content_line(is, line)) throw DomainError("truncated vertex section");
                auto t = tokens(line);
                vs.push_back(parse_coords(t, 0, t.size(), p.dim));
            }
            p.vertices = std::move(vs);
        } else if (sec[0] == "halfspaces" || sec[0] == "equalities") {
            std::vector<Halfspace> hs;
            std::vector<Equality> es;
            for (std::size_t k = 0; k < count; ++k) {
                if (!next_content_line(is, line)) throw DomainError("truncated " + sec[0] + " section");
                auto t = tokens(line);
                if (t.size() != static_cast<std::size_t>(p.dim) + 2 || t[p.dim] != relation)
                    throw DomainError("malformed " + sec[0] + " line '" + line + "'");
                auto n = parse_coords(t, 0, p.dim, p.dim);
                auto b = parse_rational(t[p.dim + 1]);
                if (relation == "<=")
                    hs.push_back(Halfspace{std::move(n), std::move(b)});
                else
                    es.push_back(Equality{std::move(n), std::move(b)});
            }
            if (relation == "<=")
                p.halfspaces = std::move(hs);
            else
                p.equalities = std::move(es);
        } else {
            throw DomainError("unknown section '" + sec[0] + "'");
        }
    }
    throw DomainError("missing 'end' line");
}

}  // namespace bellvol
