#include "twohol/wilson.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "twohol/errors.hpp"

namespace twohol {

namespace {

Rational rational_pow(const Rational& base, int e) {
    Rational out = 1;
    Rational b = e >= 0 ? base : Rational(1) / base;
    for (int i = 0; i < std::abs(e); ++i) out *= b;
    return out;
}

std::vector<char> image_mask(const CrossedModule& cm) {
    std::vector<char> mask(cm.base.order, 0);
    for (int g : cm.image_t()) mask[g] = 1;
    return mask;
}

// gerbe phase of a complex: one rotation number per triple edge, keyed by
// the sorted incident face triple; pentagon checked on the trisection quads
RotationNumber gerbe_phase(const TwoComplex& c, const std::optional<GerbeDatum>& gerbe) {
    if (!gerbe) return {};
    auto counts = c.edge_face_count();
    std::vector<Quad> quads;
    auto strata = stratify(c);
    for (int v = 0; v < c.n_vertices; ++v) {
        if (strata.vertex_strata[v] != VertexStratum::trisection) continue;
        std::set<int> inc;
        for (int f = 0; f < (int)c.faces.size(); ++f)
            for (auto s : c.faces[f].slots)
                if (c.edges[s.edge].src == v || c.edges[s.edge].dst == v) inc.insert(f);
        if (inc.size() == 4) {
            Quad q;
            std::copy(inc.begin(), inc.end(), q.begin());
            quads.push_back(q);
        }
    }
    if (!check_pentagon(*gerbe, quads))
        throw Error("wilson", "inconsistent_gerbe", "gerbe fails the pentagon condition");
    RotationNumber total;
    for (int e = 0; e < (int)c.edges.size(); ++e) {
        if (counts[e] != 3) continue;
        auto fs = c.faces_of_edge(e);
        Triple key{fs[0], fs[1], fs[2]};
        std::sort(key.begin(), key.end());
        auto it = gerbe->phases.find(key);
        if (it == gerbe->phases.end())
            throw Error("wilson", "inconsistent_gerbe", "no phase for a triple-point configuration");
        total = total + it->second;
    }
    return total;
}

// Depth-first fake-flat count over all edge decorations of c, pruned by the
// faces completed at each level; sink receives the full assignment.
void enumerate_flat(const CrossedModule& cm, const TwoComplex& c,
                    const std::function<void(const std::vector<int>&)>& sink) {
    const int ne = (int)c.edges.size();
    const auto mask = image_mask(cm);
    std::vector<std::vector<int>> faces_at(ne);
    for (int f = 0; f < (int)c.faces.size(); ++f) {
        int last = -1;
        for (auto s : c.faces[f].slots) last = std::max(last, s.edge);
        if (last >= 0) faces_at[last].push_back(f);
    }
    std::vector<int> val(ne, 0);
    if (ne == 0) {
        bool ok = true;  // faces with no edges cannot occur (slots are total)
        if (ok) sink(val);
        return;
    }
    auto word = [&](const Face& f) {
        auto hol = [&](EdgeRef r) {
            int h = val[r.edge];
            return r.sign > 0 ? h : cm.base.inverse(h);
        };
        return cm.base.op(cm.base.op(hol(f.slots[0]), hol(f.slots[2])),
                          cm.base.inverse(hol(f.slots[1])));
    };
    std::function<void(int)> rec = [&](int e) {
        if (e == ne) {
            sink(val);
            return;
        }
        for (int h = 0; h < cm.base.order; ++h) {
            val[e] = h;
            bool ok = true;
            for (int f : faces_at[e])
                if (!mask[word(c.faces[f])]) {
                    ok = false;
                    break;
                }
            if (ok) rec(e + 1);
        }
    };
    rec(0);
}

long long pack(const CrossedModule& cm, const std::vector<int>& val, const std::vector<int>& edges) {
    long long idx = 0, radix = 1;
    for (int e : edges) {
        idx += (long long)val[e] * radix;
        radix *= cm.base.order;
    }
    return idx;
}

long long pack_traversal(const CrossedModule& cm, const std::vector<int>& val,
                         const std::vector<EdgeRef>& path) {
    long long idx = 0, radix = 1;
    for (EdgeRef r : path) {
        int h = val[r.edge];
        if (r.sign < 0) h = cm.base.inverse(h);
        idx += (long long)h * radix;
        radix *= cm.base.order;
    }
    return idx;
}

// interior-cell weight exponents of a ribbon's state sum
void ribbon_exponents(const Ribbon& r, int skip_marking, int& lambda_exp, int& g_exp) {
    lambda_exp = 0;
    g_exp = 0;
    std::set<int> se(r.source_edges.begin(), r.source_edges.end());
    std::set<int> te(r.target_edges.begin(), r.target_edges.end());
    std::set<int> pinned_marks;
    if (skip_marking >= 0)
        for (EdgeRef ref : r.markings[skip_marking].path) pinned_marks.insert(ref.edge);
    for (int e = 0; e < (int)r.body.edges.size(); ++e) {
        bool s = se.count(e), t = te.count(e);
        if (s && t)
            g_exp += 1;
        else if (!s && !t && !pinned_marks.count(e))
            g_exp -= 1;
    }
    std::set<int> sv(r.source_vertices.begin(), r.source_vertices.end());
    std::set<int> tv(r.target_vertices.begin(), r.target_vertices.end());
    std::set<int> anchors;
    for (int v : r.source.incoming) anchors.insert(r.source_vertices[v]);
    for (int v : r.source.outgoing) anchors.insert(r.source_vertices[v]);
    for (int v : r.target.incoming) anchors.insert(r.target_vertices[v]);
    for (int v : r.target.outgoing) anchors.insert(r.target_vertices[v]);
    std::set<int> marked;
    for (const Marking& m : r.markings)
        for (EdgeRef ref : m.path) {
            marked.insert(r.body.edges[ref.edge].src);
            marked.insert(r.body.edges[ref.edge].dst);
        }
    for (int v = 0; v < r.body.n_vertices; ++v) {
        bool s = sv.count(v), t = tv.count(v);
        if (!s && !t && !marked.count(v))
            lambda_exp += 1;
        else if (s && t && !anchors.count(v))
            lambda_exp -= 1;
    }
}

}  // namespace

Rational lambda_weight(const CrossedModule& cm) {
    Rational q(cm.coimage_order());
    return q * q;
}

Rational derive_lambda(const CrossedModule& cm) {
    // impose exact 1-3 invariance on the triangle / fan pair: the fan is the
    // subdivision of the bare triangle, whose raw boundary-pinned count picks
    // up |G|^{-3} for the three interior edges and one unknown vertex weight
    TwoComplex tri = assemble(1, {});
    TwoComplex fan = pachner_subdivide(tri, 0);
    auto counts = [&](const TwoComplex& c) {
        std::vector<int> pinned = c.boundary_edges();
        std::map<long long, long long> out;
        enumerate_flat(cm, c, [&](const std::vector<int>& val) { ++out[pack(cm, val, pinned)]; });
        return out;
    };
    auto a = counts(tri);
    auto b = counts(fan);
    Rational g3 = rational_pow(Rational(cm.base.order), 3);
    std::optional<Rational> fitted;
    for (auto& [key, n] : a) {
        auto it = b.find(key);
        if (it == b.end() || it->second == 0)
            throw Error("wilson", "lambda", "subdivision changed the support");
        Rational ratio = Rational(n) * g3 / Rational(it->second);
        if (fitted && *fitted != ratio)
            throw Error("wilson", "lambda", "no single weight fits every decoration");
        fitted = ratio;
    }
    for (auto& [key, n] : b)
        if (n != 0 && !a.count(key))
            throw Error("wilson", "lambda", "subdivision changed the support");
    if (!fitted) throw Error("wilson", "lambda", "empty support");
    return *fitted;
}

WilsonState evaluate(const CrossedModule& cm, const Ribbon& r,
                     const std::optional<GerbeDatum>& gerbe) {
    validate_ribbon(r);
    int lambda_exp = 0, g_exp = 0;
    ribbon_exponents(r, -1, lambda_exp, g_exp);
    Rational unit = rational_pow(lambda_weight(cm), lambda_exp) *
                    rational_pow(Rational(cm.base.order), g_exp);
    std::map<std::pair<long long, long long>, long long> counts;
    enumerate_flat(cm, r.body, [&](const std::vector<int>& val) {
        ++counts[{pack(cm, val, r.source_edges), pack(cm, val, r.target_edges)}];
    });
    WilsonState out;
    out.src_edges = (int)r.source.edges.size();
    out.tgt_edges = (int)r.target.edges.size();
    for (auto& [key, n] : counts) out.table[key] = unit * n;
    out.phase = gerbe_phase(r.body, gerbe);
    return out;
}

WilsonState boundary_table(const CrossedModule& cm, const TwoComplex& c,
                           const std::optional<GerbeDatum>& gerbe) {
    std::vector<int> pinned = c.boundary_edges();
    std::set<int> pinned_set(pinned.begin(), pinned.end());
    int g_exp = -(int)(c.edges.size() - pinned.size());
    std::vector<char> touched(c.n_vertices, 0);
    for (int e : pinned) {
        touched[c.edges[e].src] = 1;
        touched[c.edges[e].dst] = 1;
    }
    int lambda_exp = 0;
    for (int v = 0; v < c.n_vertices; ++v)
        if (!touched[v]) ++lambda_exp;
    Rational unit = rational_pow(lambda_weight(cm), lambda_exp) *
                    rational_pow(Rational(cm.base.order), g_exp);
    std::map<std::pair<long long, long long>, long long> counts;
    enumerate_flat(cm, c, [&](const std::vector<int>& val) {
        ++counts[{pack(cm, val, pinned), 0}];
    });
    WilsonState out;
    out.src_edges = (int)pinned.size();
    out.tgt_edges = 0;
    for (auto& [key, n] : counts) out.table[key] = unit * n;
    out.phase = gerbe_phase(c, gerbe);
    return out;
}

MarkedState evaluate_marked(const CrossedModule& cm, const Ribbon& r, int mark,
                            const std::optional<GerbeDatum>& gerbe) {
    validate_ribbon(r);
    if (mark < 0 || mark >= (int)r.markings.size())
        throw Error("wilson", "summability", "marking index out of range");
    const auto& path = r.markings[mark].path;
    std::set<int> distinct;
    for (EdgeRef ref : path)
        if (!distinct.insert(ref.edge).second)
            throw Error("wilson", "summability", "marking revisits an edge");
    int lambda_exp = 0, g_exp = 0;
    ribbon_exponents(r, mark, lambda_exp, g_exp);
    Rational unit = rational_pow(lambda_weight(cm), lambda_exp) *
                    rational_pow(Rational(cm.base.order), g_exp);
    std::map<std::tuple<long long, long long, long long>, long long> counts;
    enumerate_flat(cm, r.body, [&](const std::vector<int>& val) {
        ++counts[{pack(cm, val, r.source_edges), pack(cm, val, r.target_edges),
                  pack_traversal(cm, val, path)}];
    });
    MarkedState out;
    out.src_edges = (int)r.source.edges.size();
    out.tgt_edges = (int)r.target.edges.size();
    out.mark_edges = (int)path.size();
    for (auto& [key, n] : counts) out.table[key] = unit * n;
    out.phase = gerbe_phase(r.body, gerbe);
    return out;
}

WilsonState compose_states(const CrossedModule& cm, const WilsonState& w, const WilsonState& wp,
                           const BoundaryGraph& b1) {
    if (w.tgt_edges != (int)b1.edges.size() || wp.src_edges != (int)b1.edges.size())
        throw Error("wilson", "composition", "middle boundary spaces do not match");
    std::set<int> anchors(b1.incoming.begin(), b1.incoming.end());
    anchors.insert(b1.outgoing.begin(), b1.outgoing.end());
    int free_vertices = b1.n_vertices - (int)anchors.size();
    Rational weight = rational_pow(Rational(cm.base.order), -(int)b1.edges.size()) *
                      rational_pow(lambda_weight(cm), free_vertices);
    WilsonState out;
    out.src_edges = w.src_edges;
    out.tgt_edges = wp.tgt_edges;
    out.phase = w.phase + wp.phase;
    std::map<long long, std::vector<std::pair<long long, Rational>>> by_mid;
    for (auto& [key, v] : wp.table) by_mid[key.first].push_back({key.second, v});
    for (auto& [key, v] : w.table) {
        auto it = by_mid.find(key.second);
        if (it == by_mid.end()) continue;
        for (auto& [tgt, vp] : it->second) {
            Rational& cell = out.table[{key.first, tgt}];
            cell += weight * v * vp;
        }
    }
    std::erase_if(out.table, [](const auto& kv) { return kv.second == 0; });
    return out;
}

WilsonState disjoint_tensor(const CrossedModule& cm, const WilsonState& w, const WilsonState& wp) {
    WilsonState out;
    out.src_edges = w.src_edges + wp.src_edges;
    out.tgt_edges = w.tgt_edges + wp.tgt_edges;
    out.phase = w.phase + wp.phase;
    long long sshift = 1, tshift = 1;
    for (int i = 0; i < w.src_edges; ++i) sshift *= cm.base.order;
    for (int i = 0; i < w.tgt_edges; ++i) tshift *= cm.base.order;
    for (auto& [ka, va] : w.table)
        for (auto& [kb, vb] : wp.table)
            out.table[{ka.first + kb.first * sshift, ka.second + kb.second * tshift}] = va * vb;
    return out;
}

namespace {

// fake-flat count of the collar ladder with pinned side decorations; mu and
// nu are the traversal digit strings of the two marking paths
long long collar_count(const CrossedModule& cm, const std::vector<int>& mu,
                       const std::vector<int>& nu) {
    const int k = (int)mu.size();
    const auto mask = image_mask(cm);
    const int n = cm.base.order;
    // unknowns: rungs r_1..r_{k-1}, diagonals d_1..d_{k-2}
    int nr = k - 1, nd = std::max(0, k - 2);
    std::vector<int> var(nr + nd, 0);
    long long total = 0;
    std::function<void(int)> rec = [&](int i) {
        if (i == nr + nd) {
            auto r = [&](int s) { return var[s - 1]; };
            auto d = [&](int s) { return var[nr + s - 1]; };
            auto inv = [&](int g) { return cm.base.inverse(g); };
            auto op = [&](int a, int b) { return cm.base.op(a, b); };
            if (!mask[op(op(mu[0], r(1)), inv(nu[0]))]) return;
            for (int s = 1; s + 1 < k; ++s) {
                if (!mask[op(op(mu[s], r(s + 1)), inv(d(s)))]) return;
                if (!mask[op(op(r(s), nu[s]), inv(d(s)))]) return;
            }
            if (!mask[op(op(r(k - 1), nu[k - 1]), inv(mu[k - 1]))]) return;
            ++total;
            return;
        }
        for (int h = 0; h < n; ++h) {
            var[i] = h;
            rec(i + 1);
        }
    };
    rec(0);
    return total;
}

std::vector<int> unpack(const CrossedModule& cm, long long idx, int digits) {
    std::vector<int> out(digits);
    for (int i = 0; i < digits; ++i) {
        out[i] = (int)(idx % cm.base.order);
        idx /= cm.base.order;
    }
    return out;
}

}  // namespace

WilsonState tensor_with_collar(const CrossedModule& cm, const MarkedState& wa,
                               const MarkedState& wb, const CollarSpec& h) {
    const int k = h.length;
    if (k < 2 || wa.mark_edges != k || wb.mark_edges != k)
        throw Error("wilson", "summability", "collar length does not match the marked spaces");
    // per-cell weights the collar adds: the 2k pinned marking edges and the
    // 2k-3 collar edges at 1/|G| each, lambda per path-interior vertex
    Rational unit = rational_pow(Rational(cm.base.order), -(4 * k - 3)) *
                    rational_pow(lambda_weight(cm), 2 * (k - 1));
    std::map<std::pair<long long, long long>, Rational> kernel;  // (mu, nu) -> C
    WilsonState out;
    out.phase = wa.phase + wb.phase;
    long long sshift = 1, tshift = 1;
    for (int i = 0; i < wa.src_edges; ++i) sshift *= cm.base.order;
    for (int i = 0; i < wa.tgt_edges; ++i) tshift *= cm.base.order;
    out.src_edges = wa.src_edges + wb.src_edges;
    out.tgt_edges = wa.tgt_edges + wb.tgt_edges;
    for (auto& [ka, va] : wa.table) {
        long long mu = std::get<2>(ka);
        for (auto& [kb, vb] : wb.table) {
            long long nu = std::get<2>(kb);
            auto itk = kernel.find({mu, nu});
            if (itk == kernel.end()) {
                long long n = collar_count(cm, unpack(cm, mu, k), unpack(cm, nu, k));
                itk = kernel.emplace(std::pair{mu, nu}, unit * n).first;
            }
            if (itk->second == 0) continue;
            Rational& cell = out.table[{std::get<0>(ka) + std::get<0>(kb) * sshift,
                                        std::get<1>(ka) + std::get<1>(kb) * tshift}];
            cell += va * vb * itk->second;
        }
    }
    std::erase_if(out.table, [](const auto& kv) { return kv.second == 0; });
    return out;
}

WilsonState tensor_with_collar(const CrossedModule& cm, const Ribbon& r, const Ribbon& rp, int neg,
                               int pos) {
    // reuse the geometric preconditions (signs, lengths, openness)
    (void)connected_sum(r, rp, neg, pos);
    MarkedState wa = evaluate_marked(cm, r, neg);
    MarkedState wb = evaluate_marked(cm, rp, pos);
    return tensor_with_collar(cm, wa, wb, CollarSpec{(int)r.markings[neg].path.size()});
}

namespace {

Amplitude pairing_impl(const CrossedModule& cm, const WilsonState& wp, const WilsonState& w,
                       bool swap_roles) {
    int want_src = swap_roles ? w.tgt_edges : w.src_edges;
    int want_tgt = swap_roles ? w.src_edges : w.tgt_edges;
    if (wp.src_edges != want_src || wp.tgt_edges != want_tgt)
        throw Error("wilson", "pairing", "states do not live on dagger-image spaces");
    auto invert = [&](long long idx, int digits) {
        long long out = 0, radix = 1;
        for (int i = 0; i < digits; ++i) {
            out += (long long)cm.base.inverse((int)(idx % cm.base.order)) * radix;
            idx /= cm.base.order;
            radix *= cm.base.order;
        }
        return out;
    };
    Amplitude total;
    total.phase = w.phase - wp.phase;  // conjugate the mirror state
    for (auto& [key, v] : w.table) {
        long long i0 = invert(key.first, w.src_edges);
        long long i1 = invert(key.second, w.tgt_edges);
        auto it = swap_roles ? wp.table.find({i1, i0}) : wp.table.find({i0, i1});
        if (it != wp.table.end()) total.value += it->second * v;
    }
    return total;
}

}  // namespace

Amplitude orientation_pairing(const CrossedModule& cm, const WilsonState& wp,
                              const WilsonState& w) {
    return pairing_impl(cm, wp, w, true);
}

Amplitude framing_pairing(const CrossedModule& cm, const WilsonState& wp, const WilsonState& w) {
    return pairing_impl(cm, wp, w, false);
}

bool is_psd_matrix(std::vector<std::vector<Rational>> m) {
    int n = (int)m.size();
    std::vector<char> done(n, 0);
    for (;;) {
        int pivot = -1;
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            if (m[i][i] < 0) return false;
            if (m[i][i] > 0 && pivot < 0) pivot = i;
        }
        if (pivot < 0) {
            // all remaining diagonal entries are zero: PSD iff the whole
            // remaining block vanishes
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && m[i][j] != 0) return false;
            return true;
        }
        Rational p = m[pivot][pivot];
        for (int i = 0; i < n; ++i) {
            if (done[i] || i == pivot) continue;
            Rational f = m[i][pivot] / p;
            for (int j = 0; j < n; ++j) {
                if (done[j]) continue;
                m[i][j] -= f * m[pivot][j];
            }
        }
        done[pivot] = 1;
    }
}

ReflectionReport reflection_positivity_check(const CrossedModule& cm,
                                             const std::vector<Ribbon>& ribbons) {
    ReflectionReport out;
    std::vector<WilsonState> states, mirrors;
    for (const Ribbon& r : ribbons) {
        if (r.target.n_vertices != 0)
            throw Error("wilson", "pairing", "reflection test needs empty targets");
        states.push_back(evaluate(cm, r));
        mirrors.push_back(evaluate(cm, dagger1(r)));
    }
    int n = (int)ribbons.size();
    out.gram.assign(n, std::vector<Rational>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Amplitude a = orientation_pairing(cm, mirrors[i], states[j]);
            if (!a.phase.is_zero())
                throw Error("wilson", "pairing", "Gram entries must be real");
            out.gram[i][j] = a.value;
        }
    out.is_psd = is_psd_matrix(out.gram);
    return out;
}

Amplitude raw_partition_sum(const CrossedModule& cm, const TwoComplex& c,
                            const std::optional<GerbeDatum>& gerbe) {
    long long count = 0;
    enumerate_flat(cm, c, [&](const std::vector<int>&) { ++count; });
    Amplitude out;
    out.value = rational_pow(lambda_weight(cm), c.n_vertices) *
                rational_pow(Rational(cm.base.order), -(int)c.edges.size()) * count;
    out.phase = gerbe_phase(c, gerbe);
    return out;
}

Amplitude partition_function(const CrossedModule& cm, const SimplePolyhedron& p,
                             const std::optional<GerbeDatum>& gerbe) {
    if (!p.body.is_closed())
        throw Error("wilson", "domain", "partition function needs a closed polyhedron");
    Amplitude raw = raw_partition_sum(cm, p.body, gerbe);
    // normalize by the round-sphere value per connected component (the
    // state sum of an unknotted sphere), so doubles evaluate to 1
    int components = 0;
    {
        std::vector<int> parent(p.body.n_vertices);
        for (int v = 0; v < p.body.n_vertices; ++v) parent[v] = v;
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& e : p.body.edges) {
            int a = find(e.src), b = find(e.dst);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
        std::set<int> roots;
        for (int v = 0; v < p.body.n_vertices; ++v) roots.insert(find(v));
        components = (int)roots.size();
    }
    Rational sphere = rational_pow(Rational(cm.coimage_order()), 5);
    raw.value /= rational_pow(sphere, components);
    return raw;
}

}  // namespace twohol
