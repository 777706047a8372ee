#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dtop/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

// Spawn the installed binary, capture stdout, and decode the exit status.
RunResult run_cli(const std::string& args) {
  fs::path out = fs::temp_directory_path() / "dtop_cli_stdout.txt";
  std::string cmd = std::string(DTOP_CLI_PATH) + " " + args + " > " +
                    out.string() + " 2>&1";
  int raw = std::system(cmd.c_str());
  RunResult r;
#ifdef _WIN32
  r.exit_code = raw;
#else
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
#endif
  r.stdout_text = dtop::read_file(out);
  fs::remove(out);
  return r;
}

fs::path write_temp(const std::string& name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / ("dtop_cli_" + name);
  dtop::write_file(p, content);
  return p;
}

}  // namespace

TEST_CASE("cli matrix + check-bh") {
  auto sym = write_temp("phi.json", R"({"pos":[[1,1,0]],"neg":[[1,2,0]]})");
  auto csv = fs::temp_directory_path() / "dtop_cli_mat.csv";

  auto r1 = run_cli("matrix --symbol " + sym.string() + " --n 6 --out " + csv.string());
  CHECK(r1.exit_code == 0);
  auto a = dtop::read_matrix_csv(csv);
  CHECK(a.dim() == 6);
  CHECK(a.entry(2, 1) == dtop::Complex(1.0));
  CHECK(a.entry(1, 2) == dtop::Complex(2.0));

  auto r2 = run_cli("check-bh --matrix " + csv.string());
  CHECK(r2.exit_code == 0);
  CHECK(r2.stdout_text.find("residual = 0") != std::string::npos);

  auto r3 = run_cli("check-bh --symbol " + sym.string() + " --n 8");
  CHECK(r3.exit_code == 0);

  fs::remove(sym);
  fs::remove(csv);
}

TEST_CASE("cli recover round trip") {
  auto sym = write_temp("phi2.json", R"({"pos":[[0,3,0],[2,0,1]],"neg":[[1,-0.5,0]]})");
  auto csv = fs::temp_directory_path() / "dtop_cli_mat2.csv";
  auto out = fs::temp_directory_path() / "dtop_cli_rec.json";

  CHECK(run_cli("matrix --symbol " + sym.string() + " --n 16 --out " + csv.string())
            .exit_code == 0);
  CHECK(run_cli("recover --matrix " + csv.string() +
                " --k 4 --norm-bound 20 --out " + out.string())
            .exit_code == 0);
  CHECK(dtop::load_symbol(out) == dtop::load_symbol(sym));

  fs::remove(sym);
  fs::remove(csv);
  fs::remove(out);
}

TEST_CASE("cli recover rejects a non-Toeplitz matrix with exit code 1") {
  auto csv = write_temp("diag.csv", "# re,im pairs, N=2\n1,0,0,0\n0,0,2,0\n");
  auto out = fs::temp_directory_path() / "dtop_cli_rec_bad.json";
  auto r = run_cli("recover --matrix " + csv.string() +
                   " --k 1 --norm-bound 10 --out " + out.string());
  CHECK(r.exit_code == 1);
  fs::remove(csv);
}

TEST_CASE("cli apply") {
  auto sym = write_temp("phi3.json", R"({"pos":[],"neg":[[1,1,0]]})");
  auto vec = write_temp("vec.json", R"({"coeffs":[[2,1,0]]})");
  auto out = fs::temp_directory_path() / "dtop_cli_apply.json";
  CHECK(run_cli("apply --symbol " + sym.string() + " --vector " + vec.string() +
                " --out " + out.string())
            .exit_code == 0);
  // T_zbar z^2 = z under the coefficient rule.
  auto f = dtop::load_vector(out);
  CHECK(f == dtop::AnalyticVector({{1, dtop::Complex(1.0)}}));
  fs::remove(sym);
  fs::remove(vec);
  fs::remove(out);
}

TEST_CASE("cli commute witness") {
  auto a = write_temp("ca.json", R"({"pos":[],"neg":[[1,1,0]]})");
  auto b = write_temp("cb.json", R"({"pos":[[1,1,0]],"neg":[]})");
  auto r = run_cli("commute --symbol-a " + a.string() + " --symbol-b " + b.string());
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("do not commute") != std::string::npos);
  CHECK(r.stdout_text.find("m=1") != std::string::npos);
  CHECK(r.stdout_text.find("n=1") != std::string::npos);

  auto r2 = run_cli("commute --symbol-a " + b.string() + " --symbol-b " + b.string());
  CHECK(r2.exit_code == 0);
  CHECK(r2.stdout_text.find("verdict: commute") != std::string::npos);
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("cli product") {
  auto a = write_temp("pa.json", R"({"pos":[],"neg":[[1,1,0]]})");
  auto b = write_temp("pb.json", R"({"pos":[[1,1,0]],"neg":[[1,1,0]]})");
  auto out = fs::temp_directory_path() / "dtop_cli_tau.json";
  auto r = run_cli("product --symbol-a " + a.string() + " --symbol-b " + b.string() +
                   " --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("is Toeplitz") != std::string::npos);
  auto tau = dtop::load_symbol(out);
  CHECK(tau == dtop::HarmonicSymbol::constant(1.0) + dtop::HarmonicSymbol::monomial(-2));

  auto r2 = run_cli("product --symbol-a " + b.string() + " --symbol-b " + a.string());
  CHECK(r2.exit_code == 0);
  CHECK(r2.stdout_text.find("not Toeplitz") != std::string::npos);
  fs::remove(a);
  fs::remove(b);
  fs::remove(out);
}

TEST_CASE("cli compact-witness") {
  auto sym = write_temp("w.json", R"({"pos":[[1,1,0]],"neg":[]})");
  auto r = run_cli("compact-witness --symbol " + sym.string() + " --m-max 4");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("m=1 value=0") != std::string::npos);
  CHECK(r.stdout_text.find("m=2 value=1.41") != std::string::npos);
  fs::remove(sym);
}

TEST_CASE("cli usage errors exit with 2") {
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("matrix --bogus-flag 1").exit_code == 2);
  CHECK(run_cli("matrix --symbol /nonexistent.json --n 4 --out /tmp/x.csv").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("cli domain errors exit with 1") {
  auto bad = write_temp("bad_mat.csv", "# re,im pairs, N=2\n1,0,0,0\n0,0,2,0\n");
  CHECK(run_cli("recover --matrix " + bad.string() +
                " --k 1 --norm-bound 10 --out /tmp/dtop_cli_nope.json")
            .exit_code == 1);
  fs::remove(bad);
}

TEST_CASE("cli berezin sweep honors DTOP_TOL and reports residuals") {
  auto sym = write_temp("bz.json", R"({"pos":[[2,1,0]],"neg":[[1,0,1]]})");
  auto out = fs::temp_directory_path() / "dtop_cli_berezin.csv";
  auto r = run_cli("berezin --symbol " + sym.string() +
                   " --grid 0.1:0.8:4@8 --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("max residual") != std::string::npos);
  std::istringstream in(dtop::read_file(out));
  std::string line;
  CHECK(std::getline(in, line));
  CHECK(line == "x,value");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 32);
  fs::remove(sym);
  fs::remove(out);
}
