#include "biofab/qa/sources.hpp"

#include <map>
#include <stdexcept>

#include "biofab/io/table.hpp"
#include "biofab/text.hpp"

namespace biofab::qa {

std::size_t SignatureActivityTable::cancer_index(const std::string& name) const {
    for (std::size_t i = 0; i < cancers.size(); ++i)
        if (cancers[i] == name) return i;
    throw std::runtime_error("activity table: unknown cancer " + name);
}

std::size_t SignatureActivityTable::signature_index(const std::string& name) const {
    for (std::size_t i = 0; i < signatures.size(); ++i)
        if (signatures[i].name == name) return i;
    throw std::runtime_error("activity table: unknown signature " + name);
}

std::vector<SpatialScoreRecord> read_spatial_scores(const std::string& path) {
    const io::Table t = io::read_table(path);
    const std::size_t ci = t.column("indication"), cg = t.column("gene"),
                      ce = t.column("ensembl_id"), cs = t.column("score");
    std::vector<SpatialScoreRecord> out;
    out.reserve(t.rows.size());
    for (const auto& row : t.rows)
        out.push_back({row[ci], row[cg], row[ce], io::parse_double(row[cs], path)});
    return out;
}

std::vector<GiFeatureRecord> read_gi_features(const std::string& path) {
    const io::Table t = io::read_table(path);
    const std::size_t cg = t.column("gene"), ci = t.column("indication"),
                      cf = t.column("feature_type"), cs = t.column("score"),
                      ct = t.column("truth");
    std::vector<GiFeatureRecord> out;
    out.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        GiFeatureRecord r;
        r.gene = row[cg];
        r.indication = row[ci];
        r.feature_type = row[cf];
        r.has_score = !row[cs].empty();
        r.truth = row[ct] == "true" || row[ct] == "1" || row[ct] == "True";
        out.push_back(std::move(r));
    }
    return out;
}

SignatureActivityTable read_activity_table(const std::string& activity_path,
                                           const std::string& signature_path) {
    SignatureActivityTable table;
    {
        const io::Table t = io::read_table(signature_path);
        const std::size_t cn = t.column("signature"), cg = t.column("genes");
        for (const auto& row : t.rows) {
            stats::GeneSet set;
            set.name = row[cn];
            for (auto& g : split_text(row[cg], ' '))
                if (!g.empty()) set.genes.push_back(std::move(g));
            set.provenance = signature_path;
            table.signatures.push_back(std::move(set));
        }
    }
    const io::Table t = io::read_table(activity_path);
    const std::size_t cc = t.column("cancer"), cs = t.column("signature"),
                      ca = t.column("activity");
    std::map<std::string, std::size_t> cancer_idx;
    for (const auto& row : t.rows)
        if (!cancer_idx.count(row[cc])) {
            cancer_idx[row[cc]] = table.cancers.size();
            table.cancers.push_back(row[cc]);
        }
    table.activity.assign(table.cancers.size(),
                          std::vector<std::vector<double>>(table.signatures.size()));
    for (const auto& row : t.rows) {
        const std::size_t c = cancer_idx.at(row[cc]);
        const std::size_t s = table.signature_index(row[cs]);
        table.activity[c][s].push_back(io::parse_double(row[ca], activity_path));
    }
    return table;
}

std::vector<TargetContextDegs> read_deg_table(const std::string& path) {
    // one row per (target, context, gene, deregulated flag)
    const io::Table t = io::read_table(path);
    const std::size_t ct = t.column("target"), cc = t.column("context"),
                      cg = t.column("gene"), cd = t.column("deregulated");
    std::map<std::pair<std::string, std::string>, TargetContextDegs> by_key;
    for (const auto& row : t.rows) {
        auto& entry = by_key[{row[ct], row[cc]}];
        entry.target = row[ct];
        entry.context = row[cc];
        entry.universe.push_back(row[cg]);
        if (row[cd] == "true" || row[cd] == "1" || row[cd] == "True")
            entry.degs.push_back(row[cg]);
    }
    std::vector<TargetContextDegs> out;
    out.reserve(by_key.size());
    for (auto& [key, entry] : by_key) out.push_back(std::move(entry));
    return out;
}

PathwayMap read_pathway_map(const std::string& path) {
    // two columns: pathway, gene
    const io::Table t = io::read_table(path);
    const std::size_t cp = t.column("pathway"), cg = t.column("gene");
    std::map<std::string, std::size_t> idx;
    PathwayMap map;
    for (const auto& row : t.rows) {
        auto it = idx.find(row[cp]);
        if (it == idx.end()) {
            idx[row[cp]] = map.pathways.size();
            map.pathways.push_back({row[cp], {row[cg]}, path});
        } else {
            map.pathways[it->second].genes.push_back(row[cg]);
        }
    }
    return map;
}

std::vector<DppContext> read_dpp_enrichment(const std::string& path) {
    const io::Table t = io::read_table(path);
    const std::size_t cd = t.column("drug"), cl = t.column("cell_line"),
                      cc = t.column("concentration_um"), cp = t.column("pathway"),
                      cs = t.column("score"), cn = t.column("nes"), cv = t.column("p_value"),
                      cf = t.column("fdr");
    std::map<std::string, std::size_t> idx;
    std::vector<DppContext> out;
    for (const auto& row : t.rows) {
        const std::string key = row[cd] + "\x1f" + row[cl] + "\x1f" + row[cc];
        auto it = idx.find(key);
        if (it == idx.end()) {
            idx[key] = out.size();
            DppContext ctx;
            ctx.drug = row[cd];
            ctx.cell_line = row[cl];
            ctx.concentration_um = io::parse_double(row[cc], path);
            out.push_back(std::move(ctx));
            it = idx.find(key);
        }
        DppContext& ctx = out[it->second];
        stats::EnrichmentResult r;
        r.set_name = row[cp];
        r.score = io::parse_double(row[cs], path);
        r.nes = io::parse_double(row[cn], path);
        r.p_value = io::parse_double(row[cv], path);
        r.fdr = io::parse_double(row[cf], path);
        r.direction = r.score > 0 ? stats::Direction::upregulated
                                  : stats::Direction::downregulated;
        ctx.results.push_back(std::move(r));
        ctx.pathway_space.push_back(row[cp]);
    }
    return out;
}

std::vector<TtpAnnotation> read_ttp_annotations(const std::string& path) {
    // header: target plus one boolean column per decision field; empty = missing
    const io::Table t = io::read_table(path);
    const std::size_t ct = t.column("target");
    std::vector<TtpAnnotation> out;
    for (const auto& row : t.rows) {
        TtpAnnotation a;
        a.target = row[ct];
        for (std::size_t c = 0; c < t.header.size(); ++c) {
            if (c == ct || row[c].empty()) continue;
            a.fields[t.header[c]] =
                row[c] == "true" || row[c] == "1" || row[c] == "True" || row[c] == "yes";
        }
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<ProteinPockets> read_pockets(const std::string& path) {
    // one row per pocket: protein, sequence, residues (space-joined 1-based
    // positions), druggability
    const io::Table t = io::read_table(path);
    const std::size_t cp = t.column("protein"), cs = t.column("sequence"),
                      cr = t.column("residues"), cd = t.column("druggability");
    std::map<std::string, std::size_t> idx;
    std::vector<ProteinPockets> out;
    for (const auto& row : t.rows) {
        auto it = idx.find(row[cp]);
        if (it == idx.end()) {
            idx[row[cp]] = out.size();
            out.push_back({row[cp], row[cs], {}});
            it = idx.find(row[cp]);
        }
        PocketRecord p;
        for (auto& tok : split_text(row[cr], ' '))
            if (!tok.empty()) p.residue_positions.push_back(std::stoul(tok));
        p.druggability = io::parse_double(row[cd], path);
        out[it->second].pockets.push_back(std::move(p));
    }
    return out;
}

}  // namespace biofab::qa
