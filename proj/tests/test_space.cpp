#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "combimots/rng.hpp"
#include "combimots/space.hpp"
#include "support/brute.hpp"

using namespace combimots;

namespace {

BuildingBlock make_block(std::string id, std::set<std::string> tags,
                         const std::string& bits) {
    BuildingBlock b;
    b.id = std::move(id);
    b.tags = std::move(tags);
    b.fingerprint = Fingerprint::from_bits(bits);
    return b;
}

ReactionTemplate make_template(std::string id,
                               std::vector<std::set<std::string>> slots,
                               std::string product_tag = "prod") {
    ReactionTemplate t;
    t.id = std::move(id);
    t.slots = std::move(slots);
    t.product_tag = std::move(product_tag);
    return t;
}

}  // namespace

TEST_CASE("compatible slot assignment") {
    const auto tmpl = make_template("T", {{"a"}, {"b"}});
    const auto A = make_block("A", {"a"}, "1000");
    const auto B = make_block("B", {"b"}, "0100");
    const auto A2 = make_block("A2", {"a"}, "0010");

    CHECK(compatible(tmpl, {&A, &B}).has_value());
    CHECK_FALSE(compatible(tmpl, {&A, &A2}).has_value());
    CHECK_FALSE(compatible(tmpl, {&A, &B, &A2}).has_value());  // oversize

    // partial tuples match as long as an injective assignment exists
    CHECK(compatible(tmpl, {&B}).has_value());
}

TEST_CASE("compatible picks the canonical assignment") {
    // both blocks fit slot 2; only the first also fits slot 1
    const auto tmpl = make_template("T", {{"a", "b"}, {"b"}});
    const auto first = make_block("x", {"b"}, "1000");
    const auto second = make_block("y", {"b"}, "0100");
    const auto assignment = compatible(tmpl, {&first, &second});
    REQUIRE(assignment.has_value());
    CHECK(assignment->slot_of_block == std::vector<std::size_t>{0, 1});
}

TEST_CASE("derive_product") {
    const auto tmpl = make_template("T1", {{"a"}, {"b"}});
    const auto A = make_block("A", {"a"}, "1100");
    const auto B = make_block("B", {"b"}, "0011");

    const Product p = derive_product(tmpl, {&A, &B});
    CHECK(p.fingerprint == Fingerprint::from_bits("1111"));
    CHECK(p.reactant_ids == std::vector<std::string>{"A", "B"});
    CHECK(p.template_id == "T1");

    // reactant order does not matter
    const Product q = derive_product(tmpl, {&B, &A});
    CHECK(q.id == p.id);
    CHECK(q.fingerprint == p.fingerprint);

    // frozen digest: the id must stay stable across runs and builds
    CHECK(p.id == "p5580a9782f0269c3");

    const auto A2 = make_block("A2", {"a"}, "0001");
    CHECK_THROWS_AS(derive_product(tmpl, {&A, &A2}), CompatibilityError);
    CHECK_THROWS_AS(derive_product(tmpl, {&A}), CompatibilityError);
}

TEST_CASE("reduce_space basics") {
    std::vector<BuildingBlock> blocks = {
        make_block("B1", {"a"}, "1100"),
        make_block("B2", {"a"}, "0011"),
        make_block("B3", {"a"}, "1111"),
    };
    const std::vector<Fingerprint> fragments = {Fingerprint::from_bits("1100")};

    CHECK(reduce_space(fragments, blocks, 0.0).size() == 3);

    const auto exact = reduce_space(fragments, blocks, 1.0);
    REQUIRE(exact.size() == 1);
    CHECK(exact[0].id == "B1");

    CHECK_THROWS_AS(reduce_space({}, blocks, 0.4), EmptyInputError);
    CHECK_THROWS_AS(reduce_space(fragments, blocks, 1.5), ValueError);
}

TEST_CASE("reduce_space equals the brute-force filter and is antitone") {
    Rng rng(31);
    std::vector<Fingerprint> fragments;
    for (int i = 0; i < 3; ++i) {
        Fingerprint fp(48);
        for (std::size_t b = 0; b < 48; ++b) {
            if (rng.uniform01() < 0.3) fp.set(b);
        }
        fragments.push_back(fp);
    }
    std::vector<BuildingBlock> blocks;
    for (int i = 0; i < 10; ++i) {
        Fingerprint fp(48);
        for (std::size_t b = 0; b < 48; ++b) {
            if (rng.uniform01() < 0.3) fp.set(b);
        }
        BuildingBlock block;
        block.id = "B" + std::to_string(i);
        block.tags = {"t"};
        block.fingerprint = fp;
        blocks.push_back(block);
    }

    const auto reduced = reduce_space(fragments, blocks, 0.4);
    std::vector<std::string> expected;
    for (const auto& block : blocks) {
        double best = 0.0;
        for (const auto& frag : fragments) {
            best = std::max(best, brute::tanimoto(block.fingerprint, frag));
        }
        if (best >= 0.4) expected.push_back(block.id);
    }
    std::vector<std::string> got;
    for (const auto& block : reduced) got.push_back(block.id);
    CHECK(got == expected);

    // threshold antitone: higher threshold keeps a subset
    std::size_t prev = blocks.size() + 1;
    for (double t : {0.0, 0.3, 0.4, 0.5, 0.6, 1.0}) {
        const auto r = reduce_space(fragments, blocks, t);
        CHECK(r.size() <= prev);
        prev = r.size();
    }
}

TEST_CASE("count_possible_products") {
    const auto A = make_block("A", {"a"}, "1000");
    const auto B = make_block("B", {"b"}, "0100");
    const auto tmpl = make_template("T", {{"a"}, {"b"}});

    CHECK(count_possible_products({A, B}, {}, 1) == 0);
    CHECK(count_possible_products({A, B}, {tmpl}, 1) == 1);
    CHECK_THROWS_AS(count_possible_products({A, B}, {tmpl}, 3), ConfigError);
}

TEST_CASE("count_possible_products matches the recursive enumerator") {
    const std::vector<BuildingBlock> blocks = {
        make_block("A", {"a"}, "1000"),
        make_block("B", {"b"}, "0100"),
        make_block("C", {"a", "b"}, "0010"),
        make_block("D", {"c"}, "0001"),
    };
    const std::vector<ReactionTemplate> templates = {
        make_template("T1", {{"a"}, {"b"}}, "prod"),
        make_template("T2", {{"prod"}, {"c"}}, "final"),
    };
    for (int steps : {1, 2}) {
        const auto expected =
            brute::enumerate_products(blocks, templates, steps).size();
        CHECK(count_possible_products(blocks, templates, steps) ==
              static_cast<long long>(expected));
    }
}

TEST_CASE("count cap reports a lower bound") {
    // 20 interchangeable blocks on both slots: C(20,2) products
    std::vector<BuildingBlock> blocks;
    for (int i = 0; i < 20; ++i) {
        blocks.push_back(make_block("B" + std::to_string(i), {"a"}, "1000"));
    }
    const auto tmpl = make_template("T", {{"a"}, {"a"}});
    CHECK(count_possible_products(blocks, {tmpl}, 1) == 190);
    CHECK_THROWS_AS(count_possible_products(blocks, {tmpl}, 1, 100),
                    CapacityError);
}

TEST_CASE("blocks and templates file round trip") {
    const std::string blocks_path = "test_space_blocks.jsonl";
    {
        std::ofstream f(blocks_path);
        f << R"({"id":"A","tags":["a"],"fp":"c0","scores":[0.9,0.8]})" << "\n";
        f << R"({"id":"B","tags":["b"],"fp":"03"})" << "\n";
    }
    const auto blocks = load_blocks(blocks_path);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].id == "A");
    CHECK(blocks[0].fingerprint.to_hex() == "c0");
    REQUIRE(blocks[0].precomputed.has_value());
    CHECK((*blocks[0].precomputed)[1] == doctest::Approx(0.8));
    CHECK_FALSE(blocks[1].precomputed.has_value());

    write_blocks("test_space_blocks_copy.jsonl", blocks);
    const auto copy = load_blocks("test_space_blocks_copy.jsonl");
    CHECK(copy.size() == 2);
    CHECK(copy[0].fingerprint == blocks[0].fingerprint);

    const std::string templates_path = "test_space_templates.json";
    {
        std::ofstream f(templates_path);
        f << R"([{"id":"T","slots":[["a"],["b"]],"product_tag":"p","combine":"or"}])";
    }
    const auto templates = load_templates(templates_path);
    REQUIRE(templates.size() == 1);
    CHECK(templates[0].arity() == 2);

    std::remove(blocks_path.c_str());
    std::remove("test_space_blocks_copy.jsonl");
    std::remove(templates_path.c_str());
}

TEST_CASE("parse errors carry line numbers") {
    const std::string path = "test_space_bad.jsonl";
    {
        std::ofstream f(path);
        f << R"({"id":"A","tags":["a"],"fp":"c0"})" << "\n";
        f << "not json\n";
    }
    try {
        load_blocks(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    std::remove(path.c_str());
}
