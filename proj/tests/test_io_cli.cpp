#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "radbasis/experiments.hpp"
#include "radbasis/table_io.hpp"

using namespace radbasis;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

#ifdef CLI_PATH
int run_cli(const std::string& args) {
  const int status = std::system((std::string(CLI_PATH) + " " + args).c_str());
  return WEXITSTATUS(status);
}
#endif

}  // namespace

TEST_CASE("CSV round trip") {
  TableDoc doc;
  doc.meta = {{"experiment", "demo"}, {"seed", "42"}};
  doc.columns = {"N", "value"};
  doc.rows = {{1, 0.1}, {2, 0.25}, {12, 1e-9}};
  std::ostringstream out;
  write_csv(doc, out);
  std::istringstream in(out.str());
  const TableDoc back = read_csv(in);
  CHECK(back.meta == doc.meta);
  CHECK(back.columns == doc.columns);
  CHECK(back.rows == doc.rows);
}

TEST_CASE("JSON output carries seed and mode fields") {
  const auto table = run_c0_blowup({1, 2}, RadNormConfig::monte_carlo(500, 7));
  const std::string body = doc_to_string(table.to_doc(), TableFormat::Json);
  const auto j = nlohmann::json::parse(body);
  CHECK(j["meta"]["seed"] == "7");
  CHECK(j["meta"]["mode"] == "mc");
  CHECK(j["rows"].size() == 2);
}

TEST_CASE("identical runs serialize to identical bytes") {
  const auto cfg = RadNormConfig::monte_carlo(2000, 99);
  const std::string a = doc_to_string(run_c0_blowup({1, 2, 4}, cfg).to_doc(), TableFormat::Csv);
  const std::string b = doc_to_string(run_c0_blowup({1, 2, 4}, cfg).to_doc(), TableFormat::Csv);
  CHECK(a == b);
  const std::string ja = doc_to_string(run_l1_blowup({1, 2}, cfg).to_doc(), TableFormat::Json);
  const std::string jb = doc_to_string(run_l1_blowup({1, 2}, cfg).to_doc(), TableFormat::Json);
  CHECK(ja == jb);
}

#ifdef CLI_PATH
TEST_CASE("CLI subcommands run and write the declared output file") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path("cli_test_tmp");
  fs::create_directories(dir);

  CHECK(run_cli("lemma-max --m-max 5 --out " + (dir / "lemma.csv").string()) == 0);
  const std::string lemma = slurp(dir / "lemma.csv");
  CHECK(lemma.find("m,t0,value") != std::string::npos);
  CHECK(lemma.find("0.25") != std::string::npos);

  CHECK(run_cli("c0-blowup --N 1,2,3 --out " + (dir / "c0.csv").string()) == 0);
  std::ifstream in(dir / "c0.csv");
  const TableDoc doc = read_csv(in);
  CHECK(doc.rows.size() == 3);
  CHECK(doc.rows[2][2] == 0.625);

  CHECK(run_cli("pi-table --K 8 --format json --out " + (dir / "pi.json").string()) == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "pi.json"));
  bool has_pi_10 = false;
  for (const auto& row : j["rows"]) {
    if (row[0] == 10.0) {
      CHECK(row[1] == 8.0);
      has_pi_10 = true;
    }
  }
  CHECK(has_pi_10);

  fs::remove_all(dir);
}

TEST_CASE("CLI exit codes distinguish the failure classes") {
  CHECK(run_cli("nonequiv --p 2 --out /dev/null 2>/dev/null") == 3);   // invalid parameter
  CHECK(run_cli("c0-blowup --N 25 --out /dev/null 2>/dev/null") == 4); // exact cap
  CHECK(run_cli("no-such-experiment 2>/dev/null") == 2);               // usage
  CHECK(run_cli("fit --input /no/such/file.csv 2>/dev/null") == 5);    // I/O
  CHECK(run_cli("c0-blowup --N 1,2 --mode mc 2>/dev/null") == 3);      // missing seed
}

TEST_CASE("CLI reruns with one seed are byte-identical") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path("cli_test_tmp2");
  fs::create_directories(dir);
  const std::string args = "khintchine --sweep 20 --terms 6 --mode mc --samples 4000 --seed 11 ";
  CHECK(run_cli(args + "--out " + (dir / "a.csv").string()) == 0);
  CHECK(run_cli(args + "--out " + (dir / "b.csv").string()) == 0);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  fs::remove_all(dir);
}

TEST_CASE("RADBASIS_OUT_DIR supplies the default output directory") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path("cli_test_env");
  fs::create_directories(dir);
  const int status = std::system(("RADBASIS_OUT_DIR=" + dir.string() + " " + CLI_PATH +
                                  " lemma-max --m-max 2")
                                     .c_str());
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(fs::exists(dir / "lemma-max.csv"));
  fs::remove_all(dir);
}

TEST_CASE("fit subcommand recovers the growth exponent from a written table") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path("cli_test_fit");
  fs::create_directories(dir);
  CHECK(run_cli("c0-blowup --N 2,4,8,12 --out " + (dir / "g.csv").string()) == 0);
  CHECK(run_cli("fit --input " + (dir / "g.csv").string() + " --out " +
                (dir / "fit.csv").string()) == 0);
  std::ifstream in(dir / "fit.csv");
  const TableDoc doc = read_csv(in);
  REQUIRE(doc.rows.size() == 1);
  CHECK(doc.rows[0][1] > 0.45);  // the sqrt-type growth exponent
  fs::remove_all(dir);
}
#endif
