// lattx: inspect finite lattices, build their extending standard forms, and
// search for the minimum-size cover-preserving geometric extensions.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "latt/latt.hpp"

namespace {

int log_level() {
    const char* v = std::getenv("LATTICE_LOG");
    return v ? std::atoi(v) : 0;
}

struct DotSink {
    std::string path;
    std::ofstream out;
    bool open() {
        if (path.empty()) return false;
        if (!out.is_open()) out.open(path);
        return out.is_open();
    }
};

struct JsonSink {
    std::string path;
    void write(const latt::json& j) const {
        if (path.empty()) {
            std::cout << j.dump(2) << "\n";
        } else {
            std::ofstream f(path);
            f << j.dump(2) << "\n";
        }
    }
};

std::string yesno(bool b) { return b ? "yes" : "no"; }

latt::SetFamily family_from_input(const latt::json& j, std::vector<std::vector<int>>* dedup_perms) {
    if (latt::is_family_json(j)) {
        latt::SetFamily sp = latt::parse_family(j);
        if (dedup_perms) *dedup_perms = latt::family_stabilizer(sp);
        return sp;
    }
    latt::Lattice l = latt::parse_lattice(j);
    latt::StandardForm form = latt::minimal_standard_form(l);
    latt::Representation rep = latt::represent(form.result);
    if (dedup_perms) {
        std::vector<latt::Mask> image;
        for (int x = 0; x < l.size(); ++x) image.push_back(rep.atom_set[x]);
        *dedup_perms = latt::family_stabilizer(
            latt::SetFamily(rep.family.universe(), image));
    }
    return rep.family;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cover-preserving geometric extensions of finite semimodular lattices"};
    app.require_subcommand(1);

    std::string path, path2, dot_path, json_path, script_path;
    long long budget = 20'000'000;
    long long cap = 50'000'000;
    int workers = 1;
    unsigned seed = 0;
    bool all_outputs = false;
    int forms_budget = 0;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--dot", dot_path, "also write Hasse diagrams as DOT to FILE");
        c->add_option("--json", json_path, "write machine-readable output to FILE");
        c->add_option("--workers", workers, "worker hint for the search scheduler")
            ->check(CLI::PositiveNumber);
        c->add_option("--seed", seed, "scheduler seed; never affects results");
    };

    auto* c_check = app.add_subcommand("check", "validate a lattice file and report its properties");
    c_check->add_option("file", path)->required();
    add_common(c_check);

    auto* c_repr = app.add_subcommand("represent", "emit the atom-set representation S_P");
    c_repr->add_option("file", path)->required();
    add_common(c_repr);

    auto* c_forms = app.add_subcommand("forms", "enumerate extending standard forms");
    c_forms->add_option("file", path)->required();
    c_forms->add_option("--budget", forms_budget, "extra atoms beyond the minimal form");
    add_common(c_forms);

    auto* c_enum = app.add_subcommand("enumerate", "run the extension search on a lattice or family");
    c_enum->add_option("file", path)->required();
    c_enum->add_flag("--all", all_outputs, "emit every output, not only those passing (M)");
    c_enum->add_option("--script", script_path, "replay scripted choices from a JSON array");
    c_enum->add_option("--budget", budget, "search node cap");
    add_common(c_enum);

    auto* c_best = app.add_subcommand("best", "minimum-size geometric extensions of a lattice");
    c_best->add_option("file", path)->required();
    c_best->add_option("--budget", budget, "search node cap");
    add_common(c_best);

    auto* c_oracle = app.add_subcommand("oracle-best", "brute-force minimal extension, for diffing");
    c_oracle->add_option("file", path)->required();
    c_oracle->add_option("--cap", cap, "oracle node cap");
    add_common(c_oracle);

    auto* c_checkm = app.add_subcommand("check-m", "test the one-atom augmentation condition on a family");
    c_checkm->add_option("file", path)->required();
    add_common(c_checkm);

    auto* c_dot = app.add_subcommand("dot", "emit a Hasse diagram as DOT text");
    c_dot->add_option("file", path)->required();
    add_common(c_dot);

    auto* c_iso = app.add_subcommand("iso", "decide isomorphism of two lattice/poset/family files");
    c_iso->add_option("file1", path)->required();
    c_iso->add_option("file2", path2)->required();
    add_common(c_iso);

    CLI11_PARSE(app, argc, argv);
    (void)seed;

    DotSink dot{dot_path, {}};
    JsonSink js{json_path};

    try {
        if (c_check->parsed()) {
            latt::json j = latt::load_file(path);
            latt::Poset p = latt::parse_poset(j);
            bool is_lat = true, semi = false, atom = false, geo = false;
            std::string witness;
            latt::Lattice l;
            try {
                l = latt::parse_lattice(j);
            } catch (const latt::NotALattice& e) {
                is_lat = false;
                witness = e.what();
            } catch (const latt::NotBounded& e) {
                is_lat = false;
                witness = e.what();
            }
            std::cout << "elements: " << p.size() << "\n";
            std::cout << "lattice: " << yesno(is_lat);
            if (!is_lat) std::cout << "  (" << witness << ")";
            std::cout << "\n";
            if (is_lat) {
                auto w = l.semimodular_witness();
                semi = !w.has_value();
                atom = l.is_atomistic();
                geo = semi && atom;
                std::cout << "semimodular: " << yesno(semi);
                if (w)
                    std::cout << "  (witness a=" << std::get<0>(*w) << " b=" << std::get<1>(*w)
                              << " c=" << std::get<2>(*w) << ")";
                std::cout << "\n";
                std::cout << "atomistic: " << yesno(atom) << "\n";
                std::cout << "geometric: " << yesno(geo) << "\n";
                std::cout << "length: " << l.length() << "\n";
                std::cout << "atoms: " << l.atoms().size() << "\n";
                std::cout << "join-irreducibles: " << l.join_irreducibles().size() << "\n";
            } else {
                std::cout << "length: " << p.length() << "\n";
            }
            if (dot.open()) latt::write_dot(dot.out, p, "input");
            if (!json_path.empty()) {
                latt::json out;
                out["elements"] = p.size();
                out["lattice"] = is_lat;
                if (is_lat) {
                    out["semimodular"] = semi;
                    out["atomistic"] = atom;
                    out["geometric"] = geo;
                    out["length"] = l.length();
                    out["atoms"] = (int)l.atoms().size();
                    out["join_irreducibles"] = (int)l.join_irreducibles().size();
                }
                js.write(out);
            }
            return (is_lat && semi) ? 0 : 1;
        }

        if (c_repr->parsed()) {
            latt::Lattice l = latt::parse_lattice(latt::load_file(path));
            latt::Representation rep = latt::represent(l);
            js.write(latt::to_json(rep.family));
            if (dot.open()) latt::write_dot(dot.out, rep.family, "representation");
            return 0;
        }

        if (c_forms->parsed()) {
            latt::Lattice l = latt::parse_lattice(latt::load_file(path));
            auto forms = latt::standard_forms(l, forms_budget);
            latt::json out = latt::json::array();
            for (const auto& f : forms) out.push_back(latt::to_json(f));
            js.write(out);
            if (dot.open())
                for (std::size_t i = 0; i < forms.size(); ++i)
                    latt::write_dot(dot.out, forms[i].result, "form" + std::to_string(i));
            return 0;
        }

        if (c_enum->parsed()) {
            latt::json j = latt::load_file(path);
            latt::EngineOptions opts;
            opts.max_nodes = budget;
            std::vector<std::vector<int>> perms;
            latt::SetFamily sp = family_from_input(j, &perms);

            if (!script_path.empty()) {
                auto script = latt::parse_script(latt::load_file(script_path));
                latt::ExtensionResult res = latt::run_deterministic(sp, script, opts);
                if (log_level() >= 1)
                    for (const auto& e : res.trace)
                        std::cerr << "insert " << latt::mask_str(e.set) << " at k=" << e.k
                                  << (e.step3 ? " (chain)" : "") << "\n";
                std::cout << "output: " << res.output.size() << " members, satisfies (M): "
                          << yesno(res.geometric) << "\n";
                js.write(latt::to_json(res.output));
                if (dot.open()) latt::write_dot(dot.out, res.output, "output");
                return 0;
            }

            latt::EnumerationReport rep = latt::enumerate_outputs(sp, perms, opts);
            int shown = 0;
            latt::json out = latt::json::array();
            for (const auto& res : rep.outputs) {
                if (!all_outputs && !res.geometric) continue;
                ++shown;
                std::cout << "output " << shown << ": " << res.output.size()
                          << " members, satisfies (M): " << yesno(res.geometric) << "\n";
                out.push_back(latt::to_json(res.output));
                if (dot.open())
                    latt::write_dot(dot.out, res.output, "output" + std::to_string(shown));
            }
            std::cout << "classes: " << shown << (all_outputs ? " (all)" : " (geometric)")
                      << ", nodes: " << rep.nodes << (rep.truncated ? ", TRUNCATED" : "")
                      << "\n";
            if (!json_path.empty()) js.write(out);
            return rep.truncated ? 1 : 0;
        }

        if (c_best->parsed()) {
            latt::Lattice l = latt::parse_lattice(latt::load_file(path));
            latt::EngineOptions opts;
            opts.max_nodes = budget;
            latt::BestResult br = latt::best_extensions(l, opts);
            std::cout << "standard form atoms: " << br.sp.universe() << ", |S_P| = "
                      << br.sp.size() << "\n";
            std::cout << "outputs: " << br.enumeration.outputs.size() << " classes, geometric: "
                      << br.filtered_count << "\n";
            latt::json out = latt::json::array();
            for (std::size_t i = 0; i < br.best.size(); ++i) {
                const auto& res = br.best[i];
                std::cout << "best " << (i + 1) << ": " << res.output.size() << " members, "
                          << res.output.family_atoms().size() << " atoms, length "
                          << res.output.length() << "\n";
                out.push_back(latt::to_json(res.output));
                if (dot.open())
                    latt::write_dot(dot.out, res.output, "best" + std::to_string(i + 1));
            }
            if (dot.open()) latt::write_dot(dot.out, l, "input");
            if (!json_path.empty()) js.write(out);
            return br.best.empty() ? 1 : 0;
        }

        if (c_oracle->parsed()) {
            latt::Lattice l = latt::parse_lattice(latt::load_file(path));
            latt::OracleOptions opts;
            opts.cap = cap;
            latt::OracleResult res = latt::brute_force_best(l, opts);
            std::cout << "minimum at depth " << res.certificate.depth << ": "
                      << res.best.size() << " members ("
                      << res.certificate.families_tested << " families tested)\n";
            js.write(latt::to_json(res.best));
            if (dot.open()) latt::write_dot(dot.out, res.best, "oracle_best");
            return 0;
        }

        if (c_checkm->parsed()) {
            latt::SetFamily f = latt::parse_family(latt::load_file(path));
            latt::MReport rep = latt::check_condition_m(f);
            if (rep.ok) {
                std::cout << "satisfies (M): yes\n";
                return 0;
            }
            std::cout << "satisfies (M): no  (witness X=" << latt::mask_str(rep.witness_set)
                      << ", atom " << latt::mask_str(rep.witness_atom) << ")\n";
            return 1;
        }

        if (c_dot->parsed()) {
            latt::json j = latt::load_file(path);
            if (latt::is_family_json(j)) {
                latt::SetFamily f = latt::parse_family(j);
                if (dot.open())
                    latt::write_dot(dot.out, f, "family");
                else
                    latt::write_dot(std::cout, f, "family");
            } else {
                latt::Poset p = latt::parse_poset(j);
                if (dot.open())
                    latt::write_dot(dot.out, p, "hasse");
                else
                    latt::write_dot(std::cout, p, "hasse");
            }
            return 0;
        }

        if (c_iso->parsed()) {
            auto load = [](const std::string& f) {
                latt::json j = latt::load_file(f);
                if (latt::is_family_json(j)) return latt::parse_family(j).to_poset();
                return latt::parse_poset(j);
            };
            bool iso = latt::is_isomorphic(load(path), load(path2));
            std::cout << "isomorphic: " << yesno(iso) << "\n";
            return iso ? 0 : 1;
        }
    } catch (const latt::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const latt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
