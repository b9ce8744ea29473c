#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hadord/cache.hpp"
#include "hadord/closure.hpp"

using namespace hadord;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const char* name)
        : path((std::filesystem::temp_directory_path() / name).string()) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("cache round trip preserves the bitmap") {
    TempFile tmp("hadord_cache_roundtrip.hord");
    OrderSet set = rule_closure({4, 12, 20}, 999, ClosureRules{true, true, true});
    ClosureRules rules{true, true, true};
    save_order_set(set, tmp.path, rules, 0xabcdef0123456789ull);
    LoadedOrderSet loaded = load_order_set(tmp.path);
    REQUIRE(loaded.set == set);
    REQUIRE(loaded.rules_byte == rules.byte());
    REQUIRE(loaded.config_hash == 0xabcdef0123456789ull);
}

TEST_CASE("cache bytes are stable across saves") {
    OrderSet set = rule_closure({4, 8}, 1000, ClosureRules{true, true, false});
    auto a = encode_order_set(set, ClosureRules{true, true, false}, 7);
    auto b = encode_order_set(set, ClosureRules{true, true, false}, 7);
    REQUIRE(a == b);
    REQUIRE(a.size() == 23 + (1000 + 7) / 8 + 8);
    REQUIRE(a[0] == 'H');
    REQUIRE(a[3] == 'D');
}

TEST_CASE("cache detects corruption and bad headers") {
    TempFile tmp("hadord_cache_corrupt.hord");
    OrderSet set = rule_closure({4}, 500, ClosureRules{true, false, false});
    save_order_set(set, tmp.path, ClosureRules{true, false, false}, 1);

    SECTION("flipped body bit fails the checksum") {
        std::fstream f(tmp.path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(30);
        char byte;
        f.seekg(30);
        f.get(byte);
        f.seekp(30);
        f.put(char(byte ^ 0x10));
        f.close();
        REQUIRE_THROWS_WITH(load_order_set(tmp.path),
                            Catch::Matchers::ContainsSubstring("checksum"));
    }
    SECTION("bad magic") {
        std::fstream f(tmp.path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(0);
        f.put('X');
        f.close();
        REQUIRE_THROWS_WITH(load_order_set(tmp.path),
                            Catch::Matchers::ContainsSubstring("magic"));
    }
    SECTION("truncated file") {
        std::filesystem::resize_file(tmp.path, 10);
        REQUIRE_THROWS_AS(load_order_set(tmp.path), cache_error);
    }
    SECTION("missing file") {
        REQUIRE_THROWS_AS(load_order_set(tmp.path + ".nope"), cache_error);
    }
}

TEST_CASE("fnv1a64 reference values") {
    // standard FNV-1a test vectors
    REQUIRE(fnv1a64(std::string("")) == 0xcbf29ce484222325ull);
    REQUIRE(fnv1a64(std::string("a")) == 0xaf63dc4c8601ec8cull);
}
