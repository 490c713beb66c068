#include "strgraph/extension.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "strgraph/offset.hpp"

namespace strgraph {

Depths ExtensionProfile::at(const VertexId& id) const {
  auto it = depths.find(id);
  return it == depths.end() ? Depths{} : it->second;
}

std::map<VertexId, CrossingSequence> crossing_sequences(const Representation& r) {
  ContactScan scan = scan_contacts(r);
  PropernessReport rep = properness_of(r, scan);
  if (!rep.proper) throw ExtensionError("crossing sequences need a proper representation");
  std::map<VertexId, CrossingSequence> out;
  for (const auto& id : r.ids()) out[id].curve = id;
  for (const auto& pc : scan.pairs) {
    long idx = 0;
    for (const auto& c : pc.contacts.contacts) {
      out[pc.first].events.push_back({pc.second, idx, c.on_first});
      out[pc.second].events.push_back({pc.first, idx, c.on_second});
      ++idx;
    }
  }
  for (auto& [id, seq] : out)
    std::sort(seq.events.begin(), seq.events.end(),
              [](const CrossingEvent& a, const CrossingEvent& b) { return a.position < b.position; });
  return out;
}

CrossingSequence crossing_sequence(const Representation& r, const VertexId& v) {
  if (!r.contains(v)) throw ExtensionError("unknown vertex '" + v + "'");
  return crossing_sequences(r).at(v);
}

namespace {

void check_bounds(const std::map<VertexId, CrossingSequence>& seqs, const ExtensionProfile& p, OverlapMode mode) {
  for (const auto& [id, d] : p.depths) {
    auto it = seqs.find(id);
    if (it == seqs.end()) throw ExtensionError("profile names unknown curve '" + id + "'");
    long n = static_cast<long>(it->second.events.size());
    if (d.left < 0 || d.right < 0 || d.left > n || d.right > n)
      throw ExtensionError("depth out of bounds for curve '" + id + "' (" + std::to_string(n) + " events)");
    if (mode == OverlapMode::disjoint && d.left + d.right > n)
      throw ExtensionError("overlapping parts on curve '" + id + "' in disjoint mode");
  }
}

long coverage(long e, long n, const Depths& d) { return (e < d.left ? 1 : 0) + (e >= n - d.right ? 1 : 0); }

}  // namespace

ExtendedCounts extended_counts(const std::map<VertexId, CrossingSequence>& seqs, const ExtensionProfile& profile,
                               OverlapMode mode) {
  check_bounds(seqs, profile, mode);
  // (pair, index) -> coverage on the lexicographically smaller curve
  std::map<std::pair<VertexPair, long>, long> first_cover;
  for (const auto& [id, seq] : seqs) {
    long n = static_cast<long>(seq.events.size());
    Depths d = profile.at(id);
    for (long e = 0; e < n; ++e) {
      const auto& ev = seq.events[e];
      if (id < ev.other) first_cover[{{id, ev.other}, ev.pair_index}] = coverage(e, n, d);
    }
  }
  ExtendedCounts out;
  for (const auto& [id, seq] : seqs) {
    long n = static_cast<long>(seq.events.size());
    Depths d = profile.at(id);
    for (long e = 0; e < n; ++e) {
      const auto& ev = seq.events[e];
      if (id < ev.other) continue;
      long a = first_cover.at({{ev.other, id}, ev.pair_index});
      out.counts[{ev.other, id}] += (1 + a) * (1 + coverage(e, n, d));
    }
  }
  return out;
}

ExtendedCounts extended_counts(const Representation& r, const ExtensionProfile& profile, OverlapMode mode) {
  return extended_counts(crossing_sequences(r), profile, mode);
}

std::optional<ExtensionProfile> search_extension(const Representation& r, long target, OverlapMode mode) {
  auto seqs = crossing_sequences(r);
  std::vector<VertexId> ids = r.ids();
  std::map<VertexId, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
  std::size_t n = ids.size();

  // crossings[i][j]: event indices on i of the crossings shared with j, paired with those on j.
  struct Shared {
    std::vector<long> on_i, on_j;
  };
  std::vector<std::vector<Shared>> shared(n, std::vector<Shared>(n));
  std::vector<long> len(n);
  std::map<std::tuple<std::size_t, std::size_t, long>, long> where;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& ev = seqs[ids[i]].events;
    len[i] = static_cast<long>(ev.size());
    for (long e = 0; e < len[i]; ++e) where[{i, index[ev[e].other], ev[e].pair_index}] = e;
  }
  for (const auto& [key, e] : where) {
    auto [i, j, idx] = key;
    if (i < j) {
      shared[i][j].on_i.push_back(e);
      shared[i][j].on_j.push_back(where.at({j, i, idx}));
    }
  }

  long max_cover = mode == OverlapMode::permissive ? 2 : 1;
  std::vector<Depths> choice(n);
  std::function<bool(std::size_t)> go = [&](std::size_t k) -> bool {
    if (k == n) return true;
    for (long L = 0; L <= len[k]; ++L)
      for (long R = 0; R <= len[k]; ++R) {
        if (mode == OverlapMode::disjoint && L + R > len[k]) continue;
        choice[k] = {L, R};
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
          if (j == k) continue;
          std::size_t a = std::min(j, k), b = std::max(j, k);
          const Shared& s = shared[a][b];
          if (s.on_i.empty()) continue;
          // Event indices of the crossings on k and on j.
          const auto& on_k = (a == k) ? s.on_i : s.on_j;
          const auto& on_j = (a == k) ? s.on_j : s.on_i;
          long lo = 0, hi = 0;
          for (std::size_t x = 0; x < on_k.size(); ++x) {
            long ak = 1 + coverage(on_k[x], len[k], choice[k]);
            if (j < k) {
              long aj = 1 + coverage(on_j[x], len[j], choice[j]);
              lo += ak * aj;
              hi += ak * aj;
            } else {
              lo += ak;
              hi += ak * (1 + max_cover);
            }
          }
          if (target < lo || target > hi) ok = false;
        }
        if (ok && go(k + 1)) return true;
      }
    return false;
  };
  if (!go(0)) return std::nullopt;
  ExtensionProfile p;
  for (std::size_t i = 0; i < n; ++i) p.depths[ids[i]] = choice[i];
  return p;
}

namespace {

// Stop position for a left part covering `count` events (count >= 1).
CurvePosition left_stop(const Polyline& c, const std::vector<CrossingEvent>& ev, long count) {
  const CurvePosition& last = ev[count - 1].position;
  if (count < static_cast<long>(ev.size()) && ev[count].position.segment == last.segment)
    return {last.segment, (last.t + ev[count].position.t) / 2};
  (void)c;
  return {last.segment, (last.t + 1) / 2};
}

CurvePosition right_stop(const std::vector<CrossingEvent>& ev, long count) {
  long first = static_cast<long>(ev.size()) - count;
  const CurvePosition& pos = ev[first].position;
  if (first > 0 && ev[first - 1].position.segment == pos.segment)
    return {pos.segment, (ev[first - 1].position.t + pos.t) / 2};
  return {pos.segment, pos.t / 2};
}

Polyline extend_curve(const Polyline& c, const std::vector<CrossingEvent>& ev, const Depths& d, const Rational& off) {
  std::vector<Point> pts;
  if (d.left > 0) {
    CurvePosition stop = left_stop(c, ev, d.left);
    pts.push_back(lane_point(c, stop, off));
    for (long i = static_cast<long>(stop.segment); i >= 0; --i) pts.push_back(offset_vertex(c, i, off));
  }
  pts.insert(pts.end(), c.vertices().begin(), c.vertices().end());
  if (d.right > 0) {
    CurvePosition stop = right_stop(ev, d.right);
    for (std::size_t i = c.size() - 1; i > stop.segment; --i) pts.push_back(offset_vertex(c, i, -off));
    pts.push_back(lane_point(c, stop, -off));
  }
  return Polyline(std::move(pts));
}

}  // namespace

Representation realize_extension(const Representation& r, const ExtensionProfile& profile) {
  auto seqs = crossing_sequences(r);
  ExtendedCounts want = extended_counts(seqs, profile);
  bool trivial = std::all_of(profile.depths.begin(), profile.depths.end(),
                             [](const auto& e) { return e.second.left == 0 && e.second.right == 0; });
  if (trivial || r.empty()) return r;
  Rational off = separation_bound(r.polylines()) / 8;
  for (int attempt = 0; attempt < 64; ++attempt, off /= 2) {
    Representation out;
    try {
      for (const auto& [id, c] : r.curves()) out.add(id, extend_curve(c, seqs.at(id).events, profile.at(id), off));
    } catch (const GeometryError&) {
      continue;
    }
    ContactScan scan = scan_contacts(out);
    if (!properness_of(out, scan).proper) continue;
    CrossingMatrix got;
    for (const auto& pc : scan.pairs)
      if (!pc.contacts.contacts.empty())
        got.counts[{pc.first, pc.second}] = static_cast<long>(pc.contacts.contacts.size());
    if (got == want) return out;
  }
  throw ExtensionError("no safe offset found for the extension");
}

std::string serialize(const ExtensionProfile& p, const Representation& r) {
  std::string out;
  for (const auto& id : r.ids()) {
    Depths d = p.at(id);
    out += "extend " + id + " " + std::to_string(d.left) + " " + std::to_string(d.right) + "\n";
  }
  return out;
}

ExtensionProfile parse_profile(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t no = 0;
  ExtensionProfile p;
  while (std::getline(in, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string word, id, extra;
    long left = 0, right = 0;
    if (!(ls >> word)) continue;
    if (word != "extend" || !(ls >> id >> left >> right) || (ls >> extra) || left < 0 || right < 0)
      throw ExtensionError("line " + std::to_string(no) + ": malformed profile line");
    if (!p.depths.emplace(id, Depths{left, right}).second)
      throw ExtensionError("line " + std::to_string(no) + ": duplicate curve '" + id + "'");
  }
  return p;
}

}  // namespace strgraph
