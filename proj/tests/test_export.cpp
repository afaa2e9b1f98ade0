#include <doctest.h>

#include <sstream>

#include "lpplab/export.hpp"

using namespace lpplab;

namespace {
std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }
}

TEST_CASE("csv exports") {
    auto c = make_config({{1, 3}, {2, 2}, {3, 1}}, {}, {}, {5.0, 5.0});
    std::ostringstream lv;
    write_levels_csv(lv, level_decomposition(c));
    CHECK(first_line(lv.str()) == "level,x,t,kind");
    CHECK(lv.str().find("1,2,3,beta") != std::string::npos);
    CHECK(lv.str().find("1,1,3,point") != std::string::npos);

    std::ostringstream tr;
    write_trajectories_csv(tr, evolve(c));
    CHECK(first_line(tr.str()) == "particle,time,position");

    std::ostringstream h;
    write_heights_csv(h, evolve_png({{{0.0, 1.0}, NucleationOrigin::bulk}}, 2.0), 3, 3);
    CHECK(first_line(h.str()) == "z,s,h");
    CHECK(h.str().find("0,2,1") != std::string::npos);
}

TEST_CASE("tables") {
    std::ostringstream cdf;
    tabulate_cdf(cdf, {0.5, 1.0}, 11);
    CHECK(first_line(cdf.str()) == "r,cdf");
    std::ostringstream shape;
    tabulate_shape(shape, 1.0, 3);
    CHECK(shape.str().find("0,1.4142135623730951,1.41421356237309") != std::string::npos);
    std::ostringstream b;
    tabulate_burgers(b, {0.5, 1.0}, 5);
    CHECK(first_line(b.str()) == "r,u");
}

TEST_CASE("svg exports are well formed") {
    std::ostringstream s;
    std::vector<double> v{0.2, 0.5, 0.7};
    write_cdf_svg(s, v, [](double r) { return r; }, 0.0, 1.0, "t");
    CHECK(s.str().rfind("<svg", 0) == 0);
    CHECK(s.str().find("</svg>") != std::string::npos);
    std::ostringstream t;
    write_trajectories_svg(t, evolve(sample_config(1, 1, {10, 10}, 1)));
    CHECK(t.str().find("</svg>") != std::string::npos);
}
