#include <catch2/catch_amalgamated.hpp>

#include "kh/document.hpp"
#include "kh/fixtures.hpp"
#include "kh/table_io.hpp"
#include "kh/tangle.hpp"

using namespace kh;

TEST_CASE("homology table text round trip") {
    HomologyTable t = khovanov_homology(fixture("trefoil"));
    HomologyTable back = table_from_text(table_to_text(t));
    CHECK(back == t);
}

TEST_CASE("result document JSON round trip") {
    PlanarDiagram d = fixture("trefoil_kinked");
    HomologyTable t = khovanov_homology(d);
    ResultDocument doc = make_document(d, t, 12.5);
    nlohmann::ordered_json j = document_to_json(doc);
    ResultDocument back = document_from_json(nlohmann::json::parse(j.dump(2)));
    CHECK(documents_equal_ignoring_timings(doc, back));
    CHECK(back.table == t);
    CHECK(back.diagram_hash == canonical_hash(d));
}

TEST_CASE("rendered cells use the published a[b]/c format") {
    auto [l, lp] = figure3_pair(3, 3);
    HomologyTable hl = khovanov_homology(l);
    HomologyTable hlp = khovanov_homology(lp);
    // spot cells straight out of the published tables for this pair
    CHECK(cell_text(hl, -4, -12) == "1[1]/60");
    CHECK(cell_text(hl, -5, -12) == "1/60");
    CHECK(cell_text(hl, -2, -8) == "2[2]/54");
    CHECK(cell_text(hl, 0, -2) == "1/1");
    CHECK(cell_text(hlp, -4, -12) == "0[2]/60");
    CHECK(cell_text(hlp, -5, -12) == "0/60");
    CHECK(cell_text(hlp, -5, -16) == "0[2]/6");
    CHECK(cell_text(hl, -1, -18) == ""); // empty cell off the support
}

TEST_CASE("rendered table carries the arrow ranks") {
    HomologyTable t = khovanov_homology(fixture("granny_disjoint_unknot"));
    std::string grid = render_table(t);
    CHECK(grid.find("-39->") != std::string::npos); // the separating rank
    CHECK(grid.find("1[1]/60") != std::string::npos);
    HomologyTable t2 = khovanov_homology(fixture("trefoil_disjoint_trefoil"));
    std::string grid2 = render_table(t2);
    CHECK(grid2.find("-40->") != std::string::npos);
    CHECK(grid2.find("0[2]/60") != std::string::npos);
}
