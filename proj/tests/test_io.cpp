#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "dm/io.hpp"

using namespace dm;
using namespace dm::io;
namespace fs = std::filesystem;

TEST_SUITE("fast") {

TEST_CASE("config: parsing, comments, and typed accessors") {
  const std::string text =
      "# run parameters\n"
      "model.omega = 1.5\n"
      "\n"
      "grid.N = 32\n"
      "flags.verbose = true\n"
      "sweep.x0 = 37.5, 50, 62.5\n"
      "sweep.N = 8, 16, 32\n"
      "name = base run\n";
  const Config c = parse_config_text(text);
  CHECK(c.get_real("model.omega") == 1.5);
  CHECK(c.get_int("grid.N") == 32);
  CHECK(c.get_bool("flags.verbose"));
  CHECK(c.get_str("name") == "base run");
  CHECK(c.get_real_list("sweep.x0") == std::vector<double>{37.5, 50.0, 62.5});
  CHECK(c.get_int_list("sweep.N") == std::vector<long>{8, 16, 32});
  // defaults only fill in missing keys
  CHECK(c.get_real("model.omega", 9.0) == 1.5);
  CHECK(c.get_real("model.lambda", 0.2) == 0.2);
  CHECK_FALSE(c.has("model.lambda"));
  // missing / malformed -> invalid_argument
  CHECK_THROWS_AS(c.get_real("missing.key"), std::invalid_argument);
  CHECK_THROWS_AS(c.get_int("name"), std::invalid_argument);
  CHECK_THROWS_AS(c.get_real("name"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("novalue\n"), std::invalid_argument);
}

TEST_CASE("config: dump/parse round trip and overrides") {
  Config c;
  c.set("b.key", "2");
  c.set("a.key", "1.25");
  c.set("list", "1, 2, 3");
  const Config c2 = parse_config_text(dump_config(c));
  CHECK(c2.kv == c.kv);
  apply_override(c, "b.key=7");
  CHECK(c.get_int("b.key") == 7);
  apply_override(c, "new.key=hello");
  CHECK(c.get_str("new.key") == "hello");
  CHECK_THROWS_AS(apply_override(c, "no-equals-sign"), std::invalid_argument);
}

TEST_CASE("format_real: shortest exact round trip") {
  for (double v : {0.1, 1.0 / 3.0, 37.5, -2.25e-17, 1e300, 0.0, -0.94752}) {
    const std::string s = format_real(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_real(37.5) == "37.5");
  CHECK(format_real(2.0) == "2");
}

TEST_CASE("csv rendering") {
  CsvTable t;
  t.header = {"x0", "N", "value"};
  t.add_row({"37.5", "16", "0.94752"});
  t.add_row({"50", "16", "0.92"});
  CHECK(render_csv(t) == "x0,N,value\n37.5,16,0.94752\n50,16,0.92\n");
}

TEST_CASE("binary arrays: encode/decode round trip") {
  BinaryArray a;
  a.dtype = "f8";
  a.shape = {2, 3};
  a.reals = {1.0, 2.5, -3.0, 4.0, 5.0, 6.25};
  const BinaryArray b = decode_binary_array(encode_binary_array(a));
  CHECK(b.dtype == "f8");
  CHECK(b.shape == a.shape);
  CHECK(b.reals == a.reals);

  BinaryArray c;
  c.dtype = "c16";
  c.shape = {2};
  c.complexes = {cplx(1.0, -2.0), cplx(0.5, 3.5)};
  const BinaryArray d = decode_binary_array(encode_binary_array(c));
  CHECK(d.complexes == c.complexes);
  CHECK(d.element_count() == 2);

  CHECK_THROWS(decode_binary_array("garbage"));
  BinaryArray bad = a;
  bad.reals.pop_back();  // payload/shape mismatch
  CHECK_THROWS(encode_binary_array(bad));
}

TEST_CASE("atomic file writes") {
  const fs::path dir = fs::temp_directory_path() / "dm_io_test";
  fs::create_directories(dir);
  const std::string path = (dir / "table.csv").string();
  CsvTable t;
  t.header = {"a"};
  t.add_row({"1"});
  write_csv_atomic(path, t);
  CHECK(read_file(path) == "a\n1\n");
  // reruns are byte-identical
  write_csv_atomic(path, t);
  CHECK(read_file(path) == "a\n1\n");
  // no temp files left behind
  int files = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    (void)e;
    ++files;
  }
  CHECK(files == 1);
  // writing into a missing directory fails without partial artifacts
  CHECK_THROWS_AS(write_file_atomic((dir / "no/such/dir/x.txt").string(), "y"),
                  std::runtime_error);
  fs::remove_all(dir);
}

TEST_CASE("config file loading") {
  const fs::path dir = fs::temp_directory_path() / "dm_io_cfg";
  fs::create_directories(dir);
  const std::string path = (dir / "run.cfg").string();
  write_file_atomic(path, "k = 3\n");
  CHECK(load_config(path).get_int("k") == 3);
  CHECK_THROWS_AS(load_config((dir / "absent.cfg").string()), std::runtime_error);
  fs::remove_all(dir);
}

}  // TEST_SUITE
