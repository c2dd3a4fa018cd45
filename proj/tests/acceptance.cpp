// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exit code is the number of failed
// criteria.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "catqkd/bell_horodecki.hpp"
#include "catqkd/cat_protocol.hpp"
#include "catqkd/filtering.hpp"
#include "catqkd/fock_oracle.hpp"
#include "catqkd/gate_decomp.hpp"
#include "catqkd/keyrate.hpp"

using namespace catqkd;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion,
                what.c_str());
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

struct GridScan {
    double worst_p_dev = 0.0;
    double worst_smax_dev = 0.0;
    double worst_qber = 0.0;
    double min_margin = 1e300;  // min of s_max - 2 over gamma > 0
    double worst_settings_dev = 0.0;
};

GridScan scan_grid() {
    GridScan out;
    for (int i = 0; i < 100; ++i) {
        for (int j = 1; j <= 100; ++j) {
            const ChannelPoint pt(0.999 * i / 99.0, j / 100.0);

            const auto piped = filter_pipeline(pt);
            const auto res = s_max_from_state(piped.state);

            out.worst_p_dev = std::max(
                out.worst_p_dev,
                std::abs(piped.success_prob - success_prob_closed_form(pt)));
            out.worst_smax_dev =
                std::max(out.worst_smax_dev, std::abs(res.s_max - s_max_closed_form(pt)));
            out.worst_qber = std::max(out.worst_qber, qber(piped));
            if (pt.gamma() > 0.0)
                out.min_margin = std::min(out.min_margin, res.s_max - 2.0);

            out.worst_settings_dev = std::max(
                out.worst_settings_dev,
                std::abs(chsh_value(piped.state, res.settings) - res.s_max));
            out.worst_settings_dev = std::max(
                out.worst_settings_dev,
                std::abs(chsh_value(piped.state, canonical_settings(pt)) - res.s_max));
        }
    }
    return out;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            t.header = cells;
            first = false;
        } else {
            std::vector<double> row;
            for (const auto& c : cells) row.push_back(std::stod(c));
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

}  // namespace

int main() {
    // 1-4 share the 100 x 100 closed-form-versus-pipeline grid.
    const GridScan grid = scan_grid();

    report(1, grid.worst_p_dev <= 1e-10 && grid.worst_smax_dev <= 1e-10,
           "closed forms match the matrix pipeline on the 100x100 grid "
           "(p dev " + fmt(grid.worst_p_dev) + ", S_max dev " +
               fmt(grid.worst_smax_dev) + ", tol 1e-10)");

    report(2, grid.worst_qber <= 1e-12,
           "QBER vanishes on the grid (max " + fmt(grid.worst_qber) + ", tol 1e-12)");

    report(3, grid.min_margin > 0.0,
           "S_max > 2 at every grid point with gamma > 0 (min margin " +
               fmt(grid.min_margin) + ")");

    {
        std::mt19937 gen(20250808u);
        std::uniform_real_distribution<double> ug(0.05, 0.95), ut(0.05, 1.0);
        double worst_low = 0.0, worst_high = 0.0;
        for (int i = 0; i < 20; ++i) {
            const ChannelPoint pt(ug(gen), ut(gen));
            const auto fs = filtered_state_closed_form(pt);
            const double horodecki = s_max_from_state(fs.state).s_max;
            const double bf = brute_force_s_max(fs.state);
            worst_low = std::max(worst_low, horodecki - bf);
            worst_high = std::max(worst_high, bf - horodecki);
        }
        report(4,
               grid.worst_settings_dev <= 1e-10 && worst_low <= 1e-4 &&
                   worst_high <= 1e-6,
               "settings achieve S_max on the grid (dev " +
                   fmt(grid.worst_settings_dev) +
                   ", tol 1e-10); brute force within [-1e-4, +1e-6] on 20 random "
                   "points (low " + fmt(worst_low) + ", high " + fmt(worst_high) + ")");
    }

    {
        const auto best = maximize_alpha();
        const auto far = optimize_gamma(1e-3);
        const double limit = far.k_opt / 1e-6;
        report(5,
               best.alpha_star >= 0.045 && best.alpha_star <= 0.047 &&
                   best.gamma_star >= 0.72 && best.gamma_star <= 0.76 &&
                   std::abs(limit - best.alpha_star) <= 1e-3,
               "alpha* = " + fmt(best.alpha_star) + " in [0.045, 0.047] at gamma* = " +
                   fmt(best.gamma_star) + " in [0.72, 0.76]; K_opt(T=1e-3)/T^2 = " +
                   fmt(limit) + " within 1e-3");
    }

    {
        const double t11 = transmission_from_distance(11.0, 0.2);
        const auto qc11 = critical_qber(t11);
        const double q11 = qc11 ? qc11->q_crit : -1.0;
        const double ratio =
            optimize_gamma(t11).k_opt / biphoton_key(0.066, t11).key_fraction;
        const auto qc150 = critical_qber(transmission_from_distance(150.0, 0.2));
        const double q150 = qc150 ? qc150->q_crit : -1.0;
        report(6,
               q11 >= 0.063 && q11 <= 0.069 && ratio >= 1.6 && ratio <= 2.4 &&
                   q150 >= 0.065 && q150 <= 0.069,
               "Q_crit(11 km) = " + fmt(q11) + " vs [0.063, 0.069]; K ratio at Q=0.066 = " +
                   fmt(ratio) + " vs [1.6, 2.4]; Q_crit(150 km) = " + fmt(q150) +
                   " vs [0.065, 0.069]");
    }

    {
        const double q0 = biphoton_zero_crossing();
        report(7, q0 >= 0.071 && q0 <= 0.072,
               "biphoton zero crossing = " + fmt(q0) + " in [0.071, 0.072]");
    }

    {
        const double pi = 3.14159265358979323846;
        double worst = 0.0;
        for (double alpha : {0.3, 0.5, 1.0, 1.5})
            for (double phi : {pi / 8, pi / 6, pi / 4})
                for (double t : {0.2, 0.5, 0.8, 1.0})
                    worst = std::max(
                        worst, compare_to_qubit_model(alpha, phi, t, 32).max_deviation);
        report(8, worst <= 1e-9,
               "Fock oracle matches the qubit model over the 48-point set (max dev " +
                   fmt(worst) + ", tol 1e-9)");
    }

    {
        std::mt19937 gen(777u);
        std::normal_distribution<double> nd(0.0, 1.0);
        double worst_aligned = 0.0;
        for (int i = 0; i < 1000; ++i) {
            cplx c(nd(gen), nd(gen)), d(nd(gen), nd(gen));
            const double n = std::sqrt(std::norm(c) + std::norm(d));
            if (n < 1e-9) continue;
            worst_aligned = std::max(
                worst_aligned,
                verify_decomposition(BasisRotation(c / n, d / n)).aligned_deviation);
        }
        const double raw_axis =
            std::max(verify_decomposition(BasisRotation(1.0, 0.0)).raw_deviation,
                     verify_decomposition(BasisRotation(0.0, 1.0)).raw_deviation);
        report(9, worst_aligned <= 1e-12 && raw_axis <= 1e-12,
               "gate reconstruction: phase-aligned dev " + fmt(worst_aligned) +
                   " over 1000 random bases (tol 1e-12); axis-case raw dev " +
                   fmt(raw_axis));
    }

    {
        const std::string out =
            (std::filesystem::temp_directory_path() / "catqkd_acceptance_sweep.csv")
                .string();
        const std::string cmd = std::string(CATQKD_CLI_PATH) +
                                " keyrate-sweep --start-km 0 --end-km 200 --step-km 1"
                                " --loss-db-per-km 0.2 --gamma optimize --out " +
                                out;
        const int rc = std::system(cmd.c_str());
        bool pass = (rc == 0);
        std::string detail;
        if (pass) {
            const CsvTable t = read_csv(out);
            double prev = 2.0, worst_identity = 0.0;
            bool monotone = true;
            for (const auto& row : t.rows) {
                const double p = row[3], r_dw = row[7], k = row[8];
                worst_identity = std::max(worst_identity, std::abs(k - p * r_dw));
                if (k > prev + 1e-15) monotone = false;
                prev = k;
            }
            const double k0 = t.rows.front()[8];
            pass = t.rows.size() == 201 && monotone && k0 >= 0.99 &&
                   worst_identity <= 1e-10;
            detail = "201 rows, K(0 km) = " + fmt(k0) +
                     ", monotone non-increasing = " + (monotone ? "yes" : "no") +
                     ", max |K - p*r_DW| = " + fmt(worst_identity);
        } else {
            detail = "keyrate-sweep invocation failed";
        }
        report(10, pass, "0-200 km sweep reproduces the key-fraction curve (" +
                             detail + ")");
        std::filesystem::remove(out);
    }

    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
