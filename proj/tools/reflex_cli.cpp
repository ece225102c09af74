#include <CLI11.hpp>
#include <json.hpp>

#include "reflex/classify.hpp"
#include "reflex/ehrhart.hpp"
#include "reflex/io.hpp"
#include "reflex/jacobian.hpp"
#include "reflex/linalg.hpp"
#include "reflex/periods.hpp"
#include "reflex/polytope.hpp"
#include "reflex/reflexive.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace reflex;

namespace {

struct RunConfig {
    std::uint64_t seed = 0;
    bool exact = false;
    bool text = false;
    long kmax = 20;
    long maxOrder = 4;
    long maxDegree = 6;
    long prime = 0;
    std::vector<std::string> inputs;
    std::string weightsCsv;
};

RankMode rankMode(const RunConfig& cfg) {
    return cfg.exact ? RankMode::Exact() : RankMode::Modular(cfg.seed);
}

json jint(const Int& x) { return x.str(); }

json jvec(const std::vector<Int>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(jint(x));
    return a;
}

json jpoint(const IntVec& v) {
    json a = json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(jint(v[i]));
    return a;
}

json jmatrix(const IntMat& m) {
    json a = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(jint(m(i, j)));
        a.push_back(std::move(row));
    }
    return a;
}

json jpolytope(const LatticePolytope& p) {
    json o;
    o["n"] = p.dim();
    json verts = json::array();
    for (const auto& v : p.vertices()) verts.push_back(jpoint(v));
    o["vertices"] = std::move(verts);
    json facets = json::array();
    for (const auto& f : p.facets()) {
        json fo;
        fo["normal"] = jpoint(f.normal);
        fo["offset"] = jint(f.offset);
        facets.push_back(std::move(fo));
    }
    o["facets"] = std::move(facets);
    return o;
}

json configJson(const RunConfig& cfg) {
    json o;
    o["seed"] = cfg.seed;
    o["rank_mode"] = cfg.exact ? "exact" : "modular";
    if (!cfg.exact) o["prime"] = std::to_string(primeFromSeed(cfg.seed));
    return o;
}

// -------------------------------------------------------------------------
// per-command reports

json cmdDual(const LatticePolytope& p, const RunConfig&) {
    LatticePolytope q = dual(p);
    json o;
    o["n"] = q.dim();
    o["polytope"] = jpolytope(q);
    o["text"] = polytopeToString(q);
    return o;
}

json cmdReflexive(const LatticePolytope& p, const RunConfig&) {
    ReflexivePairInfo info = isReflexive(p);
    DeltaVector dv = deltaVector(p);
    json o;
    o["n"] = p.dim();
    o["reflexive"] = info.isReflexive;
    if (!info.isReflexive) o["reason"] = info.reason;
    o["facet_offsets"] = jvec(info.facetOffsets);
    o["psi"] = jvec(dv.psi);
    o["psi_symmetric"] = dv.symmetric();
    o["vertex_lattice_index"] = jint(info.vertexLatticeIndex);
    if (info.isReflexive) {
        o["pair_group"] = jvec(info.pairGroup);
        o["polytope_group"] = jvec(info.polytopeGroup);
    }
    return o;
}

json cmdEhrhart(const LatticePolytope& p, const RunConfig&) {
    EhrhartPolynomial e = ehrhart(p);
    DeltaVector dv = deltaVector(p);
    json o;
    o["n"] = p.dim();
    json coeffs = json::array();
    for (const auto& c : e.coeffs) coeffs.push_back(toString(c));
    o["coefficients"] = std::move(coeffs);
    o["psi"] = jvec(dv.psi);
    o["phi"] = jvec(dv.phi);
    o["degree"] = jint(degree(p));
    ReciprocityReport rec = checkReciprocity(p, 3);
    o["reciprocity_k_le_3"] = rec.allOk;
    return o;
}

json cmdFaces(const LatticePolytope& p, const RunConfig&) {
    json o;
    o["n"] = p.dim();
    json counts = json::array();
    json all = json::array();
    for (Index d = 0; d <= p.dim(); ++d) {
        const auto& fs = p.faces(d);
        counts.push_back(fs.size());
        for (const auto& f : fs) {
            json fo;
            fo["dim"] = f.dim;
            json vi = json::array();
            for (Index i : f.vertexIndices) vi.push_back(i);
            fo["vertices"] = std::move(vi);
            PointCount pc = countPoints(p, f);
            fo["l"] = jint(pc.l);
            fo["l_star"] = jint(pc.lStar);
            if (f.dim >= 1) fo["degree"] = jint(degree(p, f));
            all.push_back(std::move(fo));
        }
    }
    o["counts_by_dim"] = std::move(counts);
    o["faces"] = std::move(all);
    return o;
}

json faceTableJson(const std::vector<FaceContribution>& table) {
    json a = json::array();
    Index id = 0;
    for (const auto& c : table) {
        json e;
        e["face_id"] = id++;
        e["codim"] = c.codim;
        json vi = json::array();
        for (Index i : c.vertexIndices) vi.push_back(i);
        e["vertices"] = std::move(vi);
        e["l_star"] = jint(c.lStar);
        e["dual_l_star"] = jint(c.dualLStar);
        e["d"] = jint(c.deg);
        e["dual_d"] = jint(c.dualDeg);
        a.push_back(std::move(e));
    }
    return a;
}

json cmdHodge(const LatticePolytope& p, const RunConfig&) {
    HodgeReport rep = hodgeReport(p);
    json o;
    o["n"] = rep.n;
    o["reflexive"] = rep.reflexive;
    o["h11"] = jint(rep.h11);
    o["h_n21"] = jint(rep.hN21);
    o["h_n21_affine"] = jint(rep.hN21Affine);
    if (rep.euler)
        o["euler"] = jint(*rep.euler);
    else
        o["euler"] = nullptr;
    o["picard_ambient"] = jint(rep.picardAmbient);
    o["faces"] = faceTableJson(rep.faceTable);
    return o;
}

json cmdEuler(const LatticePolytope& p, const RunConfig&) {
    json o;
    o["n"] = p.dim();
    o["euler"] = jint(eulerCY3(p));
    return o;
}

json cmdK3(const LatticePolytope& p, const RunConfig&) {
    K3Ranks r = k3EdgeRank(p);
    json o;
    o["n"] = p.dim();
    o["edge_sum"] = jint(check24(p));
    o["rank_f"] = jint(r.rankF);
    o["rank_g"] = jint(r.rankG);
    o["sum"] = jint(r.sum);
    o["bound_holds"] = r.boundHolds;
    o["equality_condition"] = r.equalityCondition;
    return o;
}

json cmdFundGroup(const LatticePolytope& p, const RunConfig&) {
    json o;
    o["n"] = p.dim();
    auto pair = fundamentalGroup(p, GroupMode::Pair);
    auto poly = fundamentalGroup(p, GroupMode::Polytope);
    o["pair_invariants"] = jvec(pair);
    o["polytope_invariants"] = jvec(poly);
    Int po = 1, qo = 1;
    for (const auto& d : pair) po *= d;
    for (const auto& d : poly) qo *= d;
    o["pair_order"] = jint(po);
    o["polytope_order"] = jint(qo);
    return o;
}

json cmdJacobian(const LatticePolytope& p, const LaurentPolynomial& f, const RunConfig& cfg,
                 bool full) {
    RankMode mode = rankMode(cfg);
    JacobianReport rep = jacobianDims(p, f, mode);
    json o;
    o["n"] = p.dim();
    o["regular"] = rep.regular;
    o["dims_R"] = jvec(rep.dimsR);
    o["psi"] = jvec(rep.psi);
    o["mode"] = rep.exactMode ? "exact" : "modular";
    if (!rep.exactMode) o["prime"] = std::to_string(rep.prime);
    o["seed"] = cfg.seed;
    if (full && rep.regular) {
        IdealFiltrationReport ideal = idealFiltrationDims(p, f, mode);
        DualizingReport dual = dualizingDims(p, f, mode);
        o["dims_H"] = jvec(ideal.dimsH);
        o["h_symmetric"] = ideal.symmetric;
        o["dims_D"] = jvec(dual.dimsD);
        o["phi"] = jvec(dual.phi);
    }
    return o;
}

json recurrenceJson(const std::optional<Recurrence>& rec) {
    if (!rec) return nullptr;
    json r;
    r["order"] = rec->order;
    r["degree"] = rec->degree;
    json polys = json::array();
    for (const auto& poly : rec->polys) polys.push_back(jvec(poly));
    r["polys"] = std::move(polys);
    return r;
}

json cmdPeriods(const LatticePolytope& p, const RunConfig& cfg, bool fit) {
    PeriodSeries s = pi0(p, cfg.kmax);
    json o;
    o["polytope"] = jpolytope(p);
    o["kmax"] = cfg.kmax;
    o["coefficients"] = jvec(s.coeffs);
    o["compression_step"] = s.compressionStep();
    if (fit) {
        std::vector<Int> series = s.compressed();
        auto rec = fitRecurrence(series, cfg.maxOrder, cfg.maxDegree);
        o["recurrence"] = recurrenceJson(rec);
    } else {
        o["recurrence"] = nullptr;
    }
    return o;
}

json cmdHasse(const LaurentPolynomial& f, const RunConfig& cfg) {
    Int residue = hasseConstantTerm(f, Int(cfg.prime));
    json o;
    o["prime"] = cfg.prime;
    o["residue"] = jint(residue);
    o["hasse_zero"] = residue == 0;
    return o;
}

json cmdWeights(Index n, const RunConfig&) {
    auto systems = enumerateWeightSystems(n);
    json o;
    o["n"] = n;
    o["count"] = systems.size();
    json arr = json::array();
    for (const auto& w : systems) {
        json e;
        e["d_values"] = jvec(w.dValues);
        e["weights"] = jvec(w.weights);
        e["d"] = jint(w.d);
        e["group_order"] = jint(w.groupOrder);
        arr.push_back(std::move(e));
    }
    o["systems"] = std::move(arr);
    return o;
}

json cmdSimplex(const RunConfig& cfg) {
    std::vector<Int> weights;
    std::stringstream ss(cfg.weightsCsv);
    std::string tok;
    while (std::getline(ss, tok, ',')) weights.push_back(Int(tok));
    if (weights.size() < 2) throw PreconditionError("simplex: need at least two weights");

    Int d = 0;
    for (const auto& w : weights) d += w;
    WeightSystem ws;
    ws.n = static_cast<Index>(weights.size()) - 1;
    ws.d = d;
    ws.weights = weights;
    for (const auto& w : weights) {
        if (w <= 0 || d % w != 0)
            throw PreconditionError("simplex: weights must divide their sum");
        ws.dValues.push_back(d / w);
    }
    Rat unit = 0;
    for (const auto& dv : ws.dValues) unit += Rat(1) / Rat(dv);
    if (unit != 1) throw PreconditionError("simplex: weights do not satisfy sum 1/d_i = 1");
    Int prod = 1;
    for (const auto& dv : ws.dValues) prod *= dv;
    ws.groupOrder = prod / (d * d);

    LatticePolytope p = simplexFromWeights(ws);
    SimplexMatrixReport mat = simplexMatrixCheck(p);
    json o;
    o["weights"] = jvec(ws.weights);
    o["d_values"] = jvec(ws.dValues);
    o["group_order"] = jint(ws.groupOrder);
    o["polytope"] = jpolytope(p);
    o["text"] = polytopeToString(p);
    o["b_matrix"] = jmatrix(mat.b);
    o["b_symmetric"] = mat.symmetric;
    o["b_rank"] = mat.rank;
    o["unit_fraction_identity"] = mat.unitFractionIdentity;
    o["recovered_weights"] = jvec(mat.weights);
    o["self_dual"] = canonicalForm(p) == canonicalForm(dual(p));
    ReflexivePairInfo info = isReflexive(p);
    o["reflexive"] = info.isReflexive;
    o["pair_group"] = jvec(info.pairGroup);
    return o;
}

std::string classify2dOutput(const RunConfig& cfg) {
    auto catalog = classifyPolygons();
    auto rows12 = check12(catalog);
    std::ostringstream out;
    if (cfg.text) {
        out << "classes: " << catalog.size() << "\n";
        for (size_t i = 0; i < catalog.size(); ++i)
            out << i << ": l=" << catalog[i].l << " l*=" << catalog[i].lStar
                << " d=" << catalog[i].deg << " dual=" << catalog[i].dualIndex
                << " twelve=" << (rows12[i].ok ? "ok" : "FAIL") << "\n";
    } else {
        for (size_t i = 0; i < catalog.size(); ++i) {
            json e;
            e["index"] = i;
            e["canonical_vertices"] = jmatrix(catalog[i].canonical);
            e["l"] = jint(catalog[i].l);
            e["l_star"] = jint(catalog[i].lStar);
            e["d"] = jint(catalog[i].deg);
            e["dual_index"] = catalog[i].dualIndex;
            e["boundary_plus_dual_boundary"] = jint(rows12[i].boundary + rows12[i].dualBoundary);
            out << e.dump() << "\n";
        }
    }
    return out.str();
}

// -------------------------------------------------------------------------

std::vector<std::string> expandInputs(const std::vector<std::string>& inputs) {
    std::vector<std::string> files;
    for (const auto& in : inputs) {
        if (fs::is_directory(in)) {
            std::vector<std::string> sub;
            for (const auto& e : fs::directory_iterator(in))
                if (e.path().extension() == ".poly") sub.push_back(e.path().string());
            std::sort(sub.begin(), sub.end());
            files.insert(files.end(), sub.begin(), sub.end());
        } else {
            files.push_back(in);
        }
    }
    if (files.empty()) throw PreconditionError("no input files");
    return files;
}

long threadBudget() {
    const char* env = std::getenv("REFLEX_THREADS");
    if (!env) return 1;
    long t = std::atol(env);
    return t < 1 ? 1 : t;
}

std::string renderReport(const json& report, const RunConfig& cfg) {
    if (!cfg.text) return report.dump() + "\n";
    std::ostringstream out;
    if (report.contains("text")) {
        out << report["text"].get<std::string>();
    } else {
        out << report.dump(2) << "\n";
    }
    return out.str();
}

int runPolytopeCommand(const RunConfig& cfg,
                       const std::function<json(const LatticePolytope&, const RunConfig&)>& fn) {
    auto files = expandInputs(cfg.inputs);
    const long threads = threadBudget();
    std::vector<std::string> outputs(files.size());

    auto work = [&](size_t i) {
        LatticePolytope p = readPolytopeFile(files[i]);
        json rep = fn(p, cfg);
        if (files.size() > 1) rep["file"] = files[i];
        return renderReport(rep, cfg);
    };
    if (threads <= 1 || files.size() <= 1) {
        for (size_t i = 0; i < files.size(); ++i) outputs[i] = work(i);
    } else {
        std::vector<std::future<std::string>> futs;
        for (size_t i = 0; i < files.size(); ++i)
            futs.push_back(std::async(std::launch::async, work, i));
        for (size_t i = 0; i < files.size(); ++i) outputs[i] = futs[i].get();
    }
    for (const auto& s : outputs) std::cout << s;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact lattice-polytope toolkit for toric mirror symmetry"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "seed for modular primes and generic coefficients");
    app.add_flag("--exact", cfg.exact, "force exact rank computations");
    app.add_flag("--text", cfg.text, "human-readable output instead of JSON");

    std::function<int()> action;

    auto addPolyCmd = [&](const char* name, const char* desc,
                          std::function<json(const LatticePolytope&, const RunConfig&)> fn) {
        auto* c = app.add_subcommand(name, desc);
        c->add_option("input", cfg.inputs, "polytope file(s) or directory")->required();
        c->callback([&, fn]() { action = [&, fn]() { return runPolytopeCommand(cfg, fn); }; });
        return c;
    };

    addPolyCmd("dual", "polar dual of a reflexive polytope", cmdDual);
    addPolyCmd("reflexive", "reflexivity test and pair invariants", cmdReflexive);
    addPolyCmd("ehrhart", "Ehrhart polynomial and delta vector", cmdEhrhart);
    addPolyCmd("faces", "face lattice with point counts and degrees", cmdFaces);
    addPolyCmd("hodge", "Hodge numbers of the associated Calabi-Yau (n >= 4)", cmdHodge);
    addPolyCmd("euler", "Euler characteristic of the Calabi-Yau 3-fold (n = 4)", cmdEuler);
    addPolyCmd("k3", "24-theorem and mirror K3 lattice ranks (n = 3)", cmdK3);
    addPolyCmd("fundgroup", "fundamental groups of a reflexive polytope", cmdFundGroup);

    {
        auto* c = app.add_subcommand("classify2d", "the 16 reflexive polygon classes");
        c->callback([&]() {
            action = [&]() {
                std::cout << classify2dOutput(cfg);
                return 0;
            };
        });
    }
    {
        auto* c = app.add_subcommand("weights", "unit-fraction weight systems in dimension n");
        static long n = 0;
        c->add_option("n", n, "dimension (1..5)")->required();
        c->callback([&]() {
            action = [&]() {
                std::cout << renderReport(cmdWeights(n, cfg), cfg);
                return 0;
            };
        });
    }
    {
        auto* c = app.add_subcommand("simplex", "reflexive simplex from weights");
        c->add_option("--weights", cfg.weightsCsv, "comma-separated weights w0,..,wn")->required();
        c->callback([&]() {
            action = [&]() {
                std::cout << renderReport(cmdSimplex(cfg), cfg);
                return 0;
            };
        });
    }

    auto addJacCmd = [&](const char* name, const char* desc, bool full) {
        auto* c = app.add_subcommand(name, desc);
        static std::map<std::string, std::pair<std::string, std::string>> args;
        auto& pair = args[name];
        c->add_option("polytope", pair.first, "polytope file")->required();
        c->add_option("laurent", pair.second, "laurent polynomial file")->required();
        c->callback([&, full]() {
            action = [&, full]() {
                LatticePolytope p = readPolytopeFile(pair.first);
                LaurentPolynomial f = readLaurentFile(pair.second);
                std::cout << renderReport(cmdJacobian(p, f, cfg, full), cfg);
                return 0;
            };
        });
    };
    addJacCmd("jacobian", "Jacobian ring, ideal filtration and dualizing dimensions", true);
    addJacCmd("regularity", "regularity decision via Jacobian ring dimensions", false);

    auto addPeriodCmd = [&](const char* name, const char* desc, bool fit) {
        auto* c = app.add_subcommand(name, desc);
        static std::map<std::string, std::string> args;
        auto& path = args[name];
        c->add_option("polytope", path, "polytope file")->required();
        c->add_option("--kmax", cfg.kmax, "number of series coefficients");
        if (fit) {
            c->add_option("--max-order", cfg.maxOrder, "maximal recurrence order");
            c->add_option("--max-degree", cfg.maxDegree, "maximal coefficient degree");
        }
        c->callback([&, fit]() {
            action = [&, fit]() {
                LatticePolytope p = readPolytopeFile(path);
                std::cout << renderReport(cmdPeriods(p, cfg, fit), cfg);
                return 0;
            };
        });
    };
    addPeriodCmd("periods", "constant-term period series", false);
    addPeriodCmd("recurrence", "period series with fitted holonomic recurrence", true);

    {
        auto* c = app.add_subcommand("hasse", "Hasse constant-term test mod p");
        static std::string path;
        c->add_option("laurent", path, "laurent polynomial file")->required();
        c->add_option("--prime", cfg.prime, "prime modulus")->required();
        c->callback([&]() {
            action = [&]() {
                LaurentPolynomial f = readLaurentFile(path);
                std::cout << renderReport(cmdHasse(f, cfg), cfg);
                return 0;
            };
        });
    }

    try {
        app.parse(argc, argv);
        return action();
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const InternalConsistencyError& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return 1;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
