// Drives the built binary end to end: exit codes, stdout payloads, emitted
// files, determinism across runs.

#include "mbistat/io.hpp"

#include "xml_check.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
  std::string err;
};

const fs::path& workdir() {
  static const fs::path dir = [] {
    const fs::path d =
        fs::temp_directory_path() / ("mbistat_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::string s((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
  return s;
}

std::string write(const std::string& name, const std::string& content) {
  const fs::path p = workdir() / name;
  std::ofstream out(p, std::ios::binary);
  out << content;
  return p.string();
}

Run run(const std::string& args) {
  const fs::path out = workdir() / "stdout.bin";
  const fs::path err = workdir() / "stderr.bin";
  const std::string cmd = std::string(MBISTAT_BIN) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

} // namespace

TEST_CASE("compare renders a markdown table on stdout") {
  const auto a = write("a.csv", "value\n1\n2\n3\n");
  const auto b = write("b.csv", "value\n2\n3\n4\n");
  const auto r = run("compare --a " + a + " --b " + b +
                     " --ci 0.90 --swc 0.2 --out md");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("| variable |") == 0);
  CHECK(r.out.find("1.00; ") != std::string::npos);
  CHECK(r.err.find("resolved: ci_level=0.9") != std::string::npos);
}

TEST_CASE("compare accepts the long format") {
  const auto path = write("long.csv",
                          "group,value\nA,1\nB,2\nA,2\nB,3\nA,3\nB,4\n");
  const auto r = run("compare --csv " + path + " --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("A vs B") != std::string::npos);
}

TEST_CASE("non-numeric cell exits 2 and cites row and column") {
  const auto bad = write("bad.csv", "group,value\na,1\na,2\na,3\nb,4\nb,5\nb,oops\n");
  const auto r = run("compare --csv " + bad);
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("row 7") != std::string::npos);
  CHECK(r.err.find("column value") != std::string::npos);
}

TEST_CASE("log scale on nonpositive data exits 3") {
  const auto a = write("zero.csv", "value\n0\n1\n2\n");
  const auto b = write("pos.csv", "value\n1\n2\n3\n");
  const auto r = run("compare --a " + a + " --b " + b + " --log");
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("nonpositive") != std::string::npos);
}

TEST_CASE("degenerate variance exits 3") {
  const auto a = write("flat1.csv", "value\n5\n5\n5\n");
  const auto b = write("flat2.csv", "value\n7\n7\n7\n");
  const auto r = run("compare --a " + a + " --b " + b);
  CHECK(r.exit_code == 3);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("compare").exit_code == 2);          // no inputs
  CHECK(run("frobnicate").exit_code == 2);       // unknown subcommand
  CHECK(run("dance --experiments 5").exit_code == 2); // missing --seed
  const auto a = write("u1.csv", "value\n1\n2\n");
  CHECK(run("compare --a " + a).exit_code == 2); // missing --b
  CHECK(run("compare --a " + a + " --b " + a + " --ci 1.5").exit_code == 2);
  CHECK(run("dance --seed 1 --sigma -4").exit_code == 2);
}

TEST_CASE("paired run emits a forest SVG and echoes the standardizer") {
  const auto csv = write("paired.csv", "pre,post\n10,12\n12,15\n14,16\n");
  const auto svg_path = (workdir() / "forest.svg").string();
  const auto r = run("paired --csv " + csv + " --svg " + svg_path);
  CHECK(r.exit_code == 0);
  const auto scan = xmlcheck::scan(slurp(svg_path));
  INFO(scan.error);
  CHECK(scan.well_formed);

  const auto rj = run("paired --csv " + csv + " --standardizer diff-sd --format json");
  CHECK(rj.exit_code == 0);
  CHECK(rj.out.find("\"standardizer_name\": \"diff sd\"") != std::string::npos);
}

TEST_CASE("paired rejects mismatched columns with exit 2") {
  const auto csv = write("ragged.csv", "pre,post\n10,12\n12\n");
  CHECK(run("paired --csv " + csv).exit_code == 2);
}

TEST_CASE("dance is deterministic and file mode equals stdout mode") {
  const auto csv_path = (workdir() / "dance.csv").string();
  const auto svg_path = (workdir() / "dance.svg").string();
  const auto r1 = run("dance --experiments 25 --n 20 --sigma 20 --delta 10 "
                      "--seed 42 --svg " + svg_path + " --csv " + csv_path);
  CHECK(r1.exit_code == 0);
  const auto r2 = run("dance --experiments 25 --n 20 --sigma 20 --delta 10 "
                      "--seed 42");
  CHECK(r2.exit_code == 0);
  CHECK(r1.out == r2.out);          // identical seeds, identical bytes
  CHECK(slurp(csv_path) == r1.out); // file mode mirrors stdout payload

  std::size_t lines = 0;
  for (char c : r1.out) lines += c == '\n';
  CHECK(lines == 26); // header + 25 records

  const auto scan = xmlcheck::scan(slurp(svg_path));
  CHECK(scan.well_formed);

  const auto r3 = run("dance --experiments 25 --seed 43");
  CHECK(r3.out != r1.out);
}

TEST_CASE("null dance summary sits near the nominal level") {
  const auto r = run("dance --delta 0 --experiments 2000 --seed 7 --summary");
  CHECK(r.exit_code == 0);
  const auto pos = r.out.find("significant_fraction=");
  REQUIRE(pos != std::string::npos);
  const double frac = std::stod(r.out.substr(pos + 21));
  CHECK(frac >= 0.03);
  CHECK(frac <= 0.07);
}

TEST_CASE("plot re-renders a saved bundle byte-identically") {
  const auto a = write("pa.csv", "value\n1\n2\n3\n4\n");
  const auto b = write("pb.csv", "value\n2\n3\n4\n6\n");
  const auto bundle_path = (workdir() / "bundle.json").string();
  const auto direct = run("compare --a " + a + " --b " + b +
                          " --json " + bundle_path + " --format svg");
  CHECK(direct.exit_code == 0);
  const auto replay = run("plot --json " + bundle_path + " --format svg");
  CHECK(replay.exit_code == 0);
  CHECK(replay.out == direct.out);

  const auto dance_json = (workdir() / "dr.json").string();
  CHECK(run("dance --seed 11 --experiments 5 --json " + dance_json).exit_code == 0);
  const auto dance_svg = run("plot --json " + dance_json + " --format svg");
  CHECK(dance_svg.exit_code == 0);
  CHECK(xmlcheck::scan(dance_svg.out).well_formed);

  CHECK(run("plot --json " + a).exit_code == 2); // not a JSON artifact
}

TEST_CASE("config file supplies defaults and flags override it") {
  const auto cfg = write("run.cfg", "ci=0.95\nswc=0.3\n");
  const auto a = write("ca.csv", "value\n1\n2\n3\n");
  const auto b = write("cb.csv", "value\n2\n3\n4\n");
  const auto base = run("compare --a " + a + " --b " + b + " --config " + cfg);
  CHECK(base.exit_code == 0);
  CHECK(base.err.find("ci_level=0.95") != std::string::npos);
  CHECK(base.err.find("swc=0.3") != std::string::npos);
  const auto override_run = run("compare --a " + a + " --b " + b +
                                " --config " + cfg + " --ci 0.9");
  CHECK(override_run.err.find("ci_level=0.9 ") != std::string::npos);
}

TEST_CASE("locale switches the descriptor words only") {
  const auto a = write("la.csv", "value\n1\n2\n3\n4\n");
  const auto b = write("lb.csv", "value\n12\n13\n14\n16\n");
  const auto pt = run("compare --a " + a + " --b " + b + " --locale pt --format json");
  CHECK(pt.exit_code == 0);
  CHECK(pt.out.find("Positivo") != std::string::npos);
  const auto en = run("compare --a " + a + " --b " + b + " --format json");
  CHECK(en.out.find("positive") != std::string::npos);
}

TEST_CASE("individuals plot is written on request") {
  const auto csv = write("ipair.csv", "pre,post\n10,12\n12,15\n14,16\n");
  const auto ind_path = (workdir() / "individuals.svg").string();
  const auto r = run("paired --csv " + csv + " --individuals " + ind_path);
  CHECK(r.exit_code == 0);
  const auto scan = xmlcheck::scan(slurp(ind_path));
  INFO(scan.error);
  CHECK(scan.well_formed);
  CHECK(xmlcheck::count_class(scan, "indiv-marker") == 6);
  CHECK(xmlcheck::count_class(scan, "group-whisker") == 2);
}

TEST_CASE("scale and ladder overrides flow into the bundle") {
  const auto a = write("sa.csv", "value\n1\n2\n3\n");
  const auto b = write("sb.csv", "value\n2\n3\n4\n");
  const auto r = run("compare --a " + a + " --b " + b +
                     " --scale-thresholds 0.3,0.9 --scale-labels low,mid,high"
                     " --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0.3") != std::string::npos);
  CHECK(r.out.find("\"mid\"") != std::string::npos);
  // labels must stay consistent with thresholds
  const auto bad = run("compare --a " + a + " --b " + b +
                       " --scale-thresholds 0.3,0.9 --scale-labels low,high");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("resolved config echo includes scale and ladder") {
  const auto a = write("ea.csv", "value\n1\n2\n3\n");
  const auto b = write("eb.csv", "value\n2\n3\n4\n");
  const auto r = run("compare --a " + a + " --b " + b);
  CHECK(r.err.find("scale=0.2,0.6,1.2,2") != std::string::npos);
  CHECK(r.err.find("ladder=0.005,0.05,0.25,0.75,0.95,0.985") != std::string::npos);
}

TEST_CASE("output flag writes the payload to a file with identical bytes") {
  const auto a = write("oa.csv", "value\n1\n2\n3\n");
  const auto b = write("ob.csv", "value\n2\n3\n4\n");
  const auto out_path = (workdir() / "table.md").string();
  const auto to_stdout = run("compare --a " + a + " --b " + b + " --format md");
  const auto to_file = run("compare --a " + a + " --b " + b +
                           " --format md --output " + out_path);
  CHECK(to_file.exit_code == 0);
  CHECK(to_file.out.empty());
  CHECK(slurp(out_path) == to_stdout.out);
}
