// Copyright 2026 The sitepack Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sitepack/interconnect.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "sitepack/core.hpp"

namespace sitepack {

namespace {

using u128 = unsigned __int128;

u128 mask(int bits) { return bits >= 128 ? ~u128{0} : (u128{1} << bits) - 1; }

std::string hex(u128 v, int bits) {
  const int digits = (bits + 3) / 4;
  std::string out(static_cast<std::size_t>(digits), '0');
  for (int i = digits - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = "0123456789abcdef"[static_cast<unsigned>(v & 0xf)];
    v >>= 4;
  }
  return out;
}

u128 pack(const H2BMessage& m, const AddressLayout& l) {
  u128 v = static_cast<u128>(m.command == Command::kWrite ? 1 : 0);
  v = (v << l.address_bits()) | encode_address(m.address, l);
  v = (v << l.data_bits) | (m.data & mask(l.data_bits));
  return v;
}

u128 pack(const B2HMessage& m, const AddressLayout& l) {
  u128 v = m.site & mask(l.site_bits);
  v = (v << l.word_bits) | (m.word & mask(l.word_bits));
  v = (v << l.data_bits) | (m.data & mask(l.data_bits));
  return v;
}

void put(std::vector<bool>& bits, u128 v, int width) {
  for (int i = 0; i < width; ++i) bits.push_back(((v >> i) & 1) != 0);
}

}  // namespace

std::uint64_t encode_address(const Address& a, const AddressLayout& l) {
  if (l.address_bits() > 64) throw Error("address wider than 64 bits");
  if (a.site >= l.max_sites()) throw Error(fmt::format("site {} exceeds {}-bit site field", a.site, l.site_bits));
  std::uint64_t v = a.site;
  v = (v << l.bank_bits) | static_cast<std::uint64_t>(a.bank);
  v = (v << l.word_bits) | (static_cast<std::uint64_t>(a.word) & ((std::uint64_t{1} << l.word_bits) - 1));
  return v;
}

Address decode_address(std::uint64_t raw, const AddressLayout& l) {
  Address a;
  a.word = static_cast<std::uint32_t>(raw & ((std::uint64_t{1} << l.word_bits) - 1));
  raw >>= l.word_bits;
  a.bank = (raw & 1) ? Bank::kUser : Bank::kPeriphery;
  raw >>= l.bank_bits;
  a.site = static_cast<std::uint32_t>(raw & ((std::uint64_t{1} << l.site_bits) - 1));
  return a;
}

std::string payload_hex(const H2BMessage& m, const AddressLayout& l) { return hex(pack(m, l), l.h2b_bits()); }
std::string payload_hex(const B2HMessage& m, const AddressLayout& l) { return hex(pack(m, l), l.b2h_bits()); }

bool Station::busy() const {
  if (h2b || b2h || resp) return true;
  return std::any_of(crossing.begin(), crossing.end(), [](const auto& c) { return c.has_value(); });
}

std::string trace_csv(const std::vector<TraceEvent>& events) {
  std::string out = "cycle,station,event,payload_hex\n";
  for (const auto& e : events) out += fmt::format("{},{},{},{}\n", e.cycle, e.station, e.event, e.payload);
  return out;
}

Network::Network(int n_sites, NetworkConfig config) : config_(std::move(config)) {
  if (n_sites < 1) throw Error("network needs at least one site");
  if (static_cast<std::uint64_t>(n_sites) > config_.address.max_sites()) {
    throw Error(fmt::format("{} sites exceed the {}-bit site address space", n_sites, config_.address.site_bits));
  }
  auto& order = config_.physical_order;
  if (order.empty()) {
    for (int i = 0; i < n_sites; ++i) order.push_back(static_cast<std::uint32_t>(i));
  }
  std::vector<std::uint32_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n_sites; ++i) {
    if (sorted.size() != static_cast<std::size_t>(n_sites) || sorted[static_cast<std::size_t>(i)] != static_cast<std::uint32_t>(i)) {
      throw Error("physical_order must be a permutation of 0..n-1");
    }
  }
  stations_.resize(static_cast<std::size_t>(n_sites));
  for (int p = 0; p < n_sites; ++p) stations_[static_cast<std::size_t>(p)].id = order[static_cast<std::size_t>(p)];
}

const Station& Network::station_for_site(std::uint32_t site) const {
  for (const auto& s : stations_)
    if (s.id == site) return s;
  throw Error(fmt::format("no station for site {}", site));
}

void Network::emit(int station, std::string_view event, std::string payload) {
  if (config_.record_trace) trace_.push_back({cycle_, station, std::string(event), std::move(payload)});
}

void Network::finish(std::uint64_t tag, Fate fate) { fates_[tag] = fate; }

std::uint64_t Network::inject(H2BMessage m) {
  m.tag = next_tag_++;
  fates_[m.tag] = Fate::kInFlight;
  host_.push_back(m);
  return m.tag;
}

void Network::execute(Station& s, const H2BMessage& m, int position) {
  const bool write = m.command == Command::kWrite;
  std::uint32_t value = 0;
  if (m.address.bank == Bank::kUser) {
    if (write) {
      if (s.user_alive()) s.user_bank[m.address.word] = m.data;
    } else if (s.user_alive()) {
      auto it = s.user_bank.find(m.address.word);
      value = it == s.user_bank.end() ? 0 : it->second;
    }
  } else {
    bool* reg = nullptr;
    if (m.address.word == kRegRstnSoft) reg = &s.regs.rstn_soft;
    if (m.address.word == kRegEn) reg = &s.regs.en;
    if (m.address.word == kRegEnPwrBar) reg = &s.regs.en_pwr_bar;
    if (write) {
      if (reg) *reg = (m.data & 1) != 0;
      if (!s.regs.rstn_soft) s.user_bank.clear();
    } else if (reg) {
      value = *reg ? 1 : 0;
    }
  }
  emit(position, write ? "write" : "read", payload_hex(m, config_.address));
  if (write) {
    finish(m.tag, Fate::kConsumed);
  } else {
    s.resp = B2HMessage{s.id, m.address.word, value, m.tag};
  }
}

void Network::step() {
  const std::size_t n = stations_.size();
  constexpr std::size_t kL = kCrossingLatency;
  // Ready signals are registered: a slot accepts only if it was empty when
  // the cycle began, so a slot vacated now is ready next cycle.
  std::vector<char> h2b_had(n), b2h_had(n), resp_had(n), cross_had(n * kL);
  for (std::size_t p = 0; p < n; ++p) {
    const auto& s = stations_[p];
    h2b_had[p] = s.h2b.has_value();
    b2h_had[p] = s.b2h.has_value();
    resp_had[p] = s.resp.has_value();
    for (std::size_t i = 0; i < kL; ++i) cross_had[p * kL + i] = s.crossing[i].has_value();
  }
  const int last = static_cast<int>(n) - 1;

  // Upstream b2h traffic; downstream messages win over local responses.
  for (std::size_t p = 0; p < n; ++p) {
    auto& s = stations_[p];
    if (!b2h_had[p]) continue;
    if (p == 0) {
      emit(0, "deliver", payload_hex(*s.b2h, config_.address));
      finish(s.b2h->tag, Fate::kConsumed);
      responses_.push_back(*s.b2h);
      s.b2h.reset();
    } else if (ready(!b2h_had[p - 1])) {
      emit(static_cast<int>(p), "b2h_forward", payload_hex(*s.b2h, config_.address));
      stations_[p - 1].b2h = s.b2h;
      s.b2h.reset();
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    auto& s = stations_[p];
    if (resp_had[p] && !b2h_had[p] && !s.b2h) {
      emit(static_cast<int>(p), "respond", payload_hex(*s.resp, config_.address));
      s.b2h = s.resp;
      s.resp.reset();
    }
  }

  // User-domain crossing: the oldest stage executes, the rest shift.
  for (std::size_t p = 0; p < n; ++p) {
    auto& s = stations_[p];
    auto& tail = s.crossing[kL - 1];
    if (cross_had[p * kL + kL - 1]) {
      const bool needs_resp = tail->command == Command::kRead;
      if (!needs_resp || (!resp_had[p] && !s.resp)) {
        const H2BMessage m = *tail;
        tail.reset();
        execute(s, m, static_cast<int>(p));
      }
    }
    for (std::size_t i = kL - 1; i-- > 0;) {
      if (cross_had[p * kL + i] && !cross_had[p * kL + i + 1]) {
        s.crossing[i + 1] = s.crossing[i];
        s.crossing[i].reset();
      }
    }
  }

  // Downstream h2b traffic.
  for (std::size_t p = 0; p < n; ++p) {
    auto& s = stations_[p];
    if (!h2b_had[p]) continue;
    const H2BMessage m = *s.h2b;
    const int pos = static_cast<int>(p);
    if (m.address.site == s.id) {
      if (m.address.bank == Bank::kUser) {
        if (!cross_had[p * kL]) {
          emit(pos, "consume", payload_hex(m, config_.address));
          s.crossing[0] = m;
          s.h2b.reset();
        }
      } else if (m.command == Command::kWrite || (!resp_had[p] && !s.resp)) {
        emit(pos, "consume", payload_hex(m, config_.address));
        s.h2b.reset();
        execute(s, m, pos);
      }
    } else if (pos == last) {
      // Tied-off end: nothing downstream can accept it.
      emit(pos, "drop", payload_hex(m, config_.address));
      faults_.push_back(fmt::format("cycle {}: message for site {} dropped at tied-off end", cycle_, m.address.site));
      finish(m.tag, Fate::kDropped);
      s.h2b.reset();
    } else if (ready(!h2b_had[p + 1])) {
      emit(pos, "forward", payload_hex(m, config_.address));
      stations_[p + 1].h2b = m;
      s.h2b.reset();
    }
  }

  if (!host_.empty() && ready(!h2b_had[0])) {
    emit(-1, "inject", payload_hex(host_.front(), config_.address));
    stations_[0].h2b = host_.front();
    host_.pop_front();
    ++accepted_;
  }
  ++cycle_;
}

bool Network::idle() const {
  if (!host_.empty()) return false;
  return std::none_of(stations_.begin(), stations_.end(), [](const Station& s) { return s.busy(); });
}

bool Network::drain(std::uint64_t max_cycles) {
  for (std::uint64_t i = 0; i < max_cycles; ++i) {
    if (idle()) return true;
    step();
  }
  return idle();
}

bool Network::mmio_write(std::uint64_t address, std::uint32_t data) {
  const std::uint64_t tag = inject({Command::kWrite, decode_address(address, config_.address), data, 0});
  if (!drain()) throw Error("network failed to drain");
  return fates_.at(tag) == Fate::kConsumed;
}

std::optional<std::uint32_t> Network::mmio_read(std::uint64_t address) {
  const Address a = decode_address(address, config_.address);
  const std::uint64_t tag = inject({Command::kRead, a, 0, 0});
  std::optional<std::uint64_t> started;
  for (;;) {
    step();
    if (fates_.at(tag) == Fate::kConsumed) {
      for (auto it = responses_.rbegin(); it != responses_.rend(); ++it)
        if (it->tag == tag) return it->data;
    }
    // The clock starts once the request has entered the chain.
    if (!started && std::none_of(host_.begin(), host_.end(), [&](const H2BMessage& m) { return m.tag == tag; })) {
      started = cycle_;
    }
    if (started && cycle_ - *started > timeout_cycles()) {
      faults_.push_back(fmt::format("cycle {}: read of site {} word {:#x} timed out", cycle_, a.site, a.word));
      if (fates_.at(tag) == Fate::kInFlight) finish(tag, Fate::kTimedOut);
      return std::nullopt;
    }
  }
}

void Network::activate_site(std::uint32_t site) {
  for (const auto& s : stations_) {
    if (s.id != site) write({s.id, Bank::kPeriphery, kRegEn}, 0);
  }
  write({site, Bank::kPeriphery, kRegEn}, 1);
  if (active_count() > 1) throw Error("more than one site enabled");
}

int Network::active_count() const {
  return static_cast<int>(std::count_if(stations_.begin(), stations_.end(), [](const Station& s) { return s.regs.en; }));
}

std::vector<bool> Network::station_bits(int position) const {
  const auto& s = stations_.at(static_cast<std::size_t>(position));
  const auto& l = config_.address;
  std::vector<bool> bits;
  auto put_h2b = [&](const std::optional<H2BMessage>& m) {
    bits.push_back(m.has_value());
    put(bits, m ? pack(*m, l) : 0, l.h2b_bits());
  };
  auto put_b2h = [&](const std::optional<B2HMessage>& m) {
    bits.push_back(m.has_value());
    put(bits, m ? pack(*m, l) : 0, l.b2h_bits());
  };
  put_h2b(s.h2b);
  put_b2h(s.b2h);
  put_b2h(s.resp);
  for (const auto& c : s.crossing) put_h2b(c);
  bits.push_back(s.regs.rstn_soft);
  bits.push_back(s.regs.en);
  bits.push_back(s.regs.en_pwr_bar);
  return bits;
}

std::string Network::state_key() const {
  std::string key;
  for (int p = 0; p < size(); ++p) {
    for (bool b : station_bits(p)) key.push_back(b ? '1' : '0');
    for (const auto& [w, d] : stations_[static_cast<std::size_t>(p)].user_bank) key += fmt::format(";{}={}", w, d);
    key.push_back('|');
  }
  for (const auto& m : host_) key += hex(pack(m, config_.address), config_.address.h2b_bits()) + ",";
  return key;
}

int track_scaling(Topology topology, int n) {
  if (n < 1) throw Error("track_scaling needs n >= 1");
  return topology == Topology::kStar ? n : 1;
}

int bundle_width_bits(const AddressLayout& layout) { return layout.h2b_bits() + layout.b2h_bits(); }

namespace {

std::vector<H2BMessage> bounded_alphabet(int n) {
  std::vector<H2BMessage> out;
  for (int s = 0; s < n; ++s) {
    const auto site = static_cast<std::uint32_t>(s);
    out.push_back({Command::kRead, {site, Bank::kUser, 0}, 0, 0});
    out.push_back({Command::kWrite, {site, Bank::kUser, 0}, 1, 0});
    out.push_back({Command::kRead, {site, Bank::kPeriphery, kRegEn}, 0, 0});
  }
  return out;
}

std::string describe(const H2BMessage& m) {
  return fmt::format("inject {} site {} {} word {}{}", m.command == Command::kRead ? "read" : "write", m.address.site,
                     m.address.bank == Bank::kUser ? "user" : "periph", m.address.word,
                     m.command == Command::kWrite ? fmt::format(" data {}", m.data) : "");
}

}  // namespace

DeadlockReport check_deadlock_freedom(int n_sites, std::uint64_t trace_length, std::uint64_t seed,
                                      const NetworkConfig& config, int max_injections) {
  DeadlockReport report;
  NetworkConfig cfg = config;
  cfg.record_trace = false;
  const Network root(n_sites, cfg);
  const auto alphabet = bounded_alphabet(n_sites);

  if (n_sites <= 3) {
    report.exhaustive = true;
    struct Node {
      Network net;
      int used;
      std::size_t parent;
      std::string action;
    };
    std::vector<Node> nodes;
    std::set<std::string> seen;
    nodes.push_back({root, 0, 0, "reset"});
    seen.insert(root.state_key() + "#0");
    for (std::size_t head = 0; head < nodes.size(); ++head) {
      const Node cur = nodes[head];
      // Idle stepping first: this is also the deadlock probe.
      {
        Network next = cur.net;
        next.step();
        if (!cur.net.idle() && next.state_key() == cur.net.state_key()) {
          report.deadlock_free = false;
          std::vector<std::string> path{"step (no progress)"};
          for (std::size_t i = head; i != 0; i = nodes[i].parent) path.push_back(nodes[i].action);
          std::reverse(path.begin(), path.end());
          report.counterexample = std::move(path);
          report.states_explored = seen.size();
          return report;
        }
        if (seen.insert(next.state_key() + "#" + std::to_string(cur.used)).second) {
          nodes.push_back({std::move(next), cur.used, head, "step"});
        }
      }
      if (cur.used >= max_injections) continue;
      for (const auto& m : alphabet) {
        Network next = cur.net;
        next.inject(m);
        next.step();
        if (seen.insert(next.state_key() + "#" + std::to_string(cur.used + 1)).second) {
          nodes.push_back({std::move(next), cur.used + 1, head, describe(m) + "; step"});
        }
      }
    }
    report.states_explored = seen.size();
  }

  // Randomized traffic, including requests that fall off the tied-off end.
  Network net = root;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> site_dist(0, n_sites);
  std::uniform_int_distribution<int> word_dist(0, 3);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::string> recent;
  for (std::uint64_t c = 0; c < trace_length; ++c) {
    if (net.host_queue().size() < 4 && coin(rng)) {
      H2BMessage m;
      m.command = coin(rng) ? Command::kRead : Command::kWrite;
      m.address.site = static_cast<std::uint32_t>(site_dist(rng));
      m.address.bank = coin(rng) ? Bank::kUser : Bank::kPeriphery;
      m.address.word = static_cast<std::uint32_t>(word_dist(rng));
      // Leave enable and reset alone so the traffic cannot break the
      // single-active invariant.
      if (m.address.bank == Bank::kPeriphery && m.command == Command::kWrite) m.address.word = 3;
      m.data = static_cast<std::uint32_t>(rng());
      net.inject(m);
      recent.push_back(describe(m));
      if (recent.size() > 16) recent.erase(recent.begin());
      net.step();
    } else {
      const std::string before = net.state_key();
      net.step();
      if (!net.idle() && net.state_key() == before) {
        report.deadlock_free = false;
        report.counterexample = recent;
        report.counterexample.push_back(fmt::format("cycle {}: step (no progress)", net.cycle()));
        break;
      }
    }
    ++report.random_cycles;
  }
  return report;
}

double measure_throughput(int n_sites, std::uint64_t cycles) {
  Network net(n_sites);
  const auto site = static_cast<std::uint32_t>(n_sites - 1);
  for (std::uint64_t c = 0; c < cycles; ++c) {
    if (net.host_queue().empty()) {
      net.inject({Command::kWrite, {site, Bank::kUser, static_cast<std::uint32_t>(c % 16)}, static_cast<std::uint32_t>(c), 0});
    }
    net.step();
  }
  return static_cast<double>(net.accepted()) / static_cast<double>(cycles);
}

namespace {

std::uint64_t parse_number(std::string_view tok, int line) {
  int base = 10;
  if (tok.size() > 2 && tok[0] == '0' && (tok[1] == 'x' || tok[1] == 'X')) {
    tok.remove_prefix(2);
    base = 16;
  }
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v, base);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw Error(fmt::format("line {}: bad number '{}'", line, tok));
  }
  return v;
}

Bank parse_bank(const std::string& tok, int line) {
  if (tok == "user") return Bank::kUser;
  if (tok == "periph") return Bank::kPeriphery;
  throw Error(fmt::format("line {}: bank must be user or periph, got '{}'", line, tok));
}

}  // namespace

ScriptResult run_script(std::string_view text, bool record_trace) {
  ScriptResult result;
  std::optional<Network> net;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  auto need = [&](int l) -> Network& {
    if (!net) throw Error(fmt::format("line {}: 'sites N' must come first", l));
    return *net;
  };
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& op = tok[0];
    auto arity = [&](std::size_t n) {
      if (tok.size() != n) throw Error(fmt::format("line {}: '{}' takes {} argument(s)", line, op, n - 1));
    };
    auto site = [&](std::size_t i) {
      const auto v = parse_number(tok[i], line);
      if (v >= AddressLayout{}.max_sites()) throw Error(fmt::format("line {}: site {} out of address space", line, v));
      return static_cast<std::uint32_t>(v);
    };
    auto u32 = [&](std::size_t i) {
      const auto v = parse_number(tok[i], line);
      if (v > 0xffffffffULL) throw Error(fmt::format("line {}: value {} exceeds 32 bits", line, tok[i]));
      return static_cast<std::uint32_t>(v);
    };
    if (op == "sites") {
      arity(2);
      if (net) throw Error(fmt::format("line {}: 'sites' given twice", line));
      NetworkConfig cfg;
      cfg.record_trace = record_trace;
      net.emplace(static_cast<int>(parse_number(tok[1], line)), cfg);
      result.log.push_back(fmt::format("sites {}", net->size()));
    } else if (op == "activate") {
      arity(2);
      need(line).activate_site(site(1));
      result.log.push_back(fmt::format("activate {} -> active {}", tok[1], net->active_count()));
    } else if (op == "write") {
      arity(5);
      const bool ok = need(line).write({site(1), parse_bank(tok[2], line), u32(3)}, u32(4));
      result.log.push_back(fmt::format("write {} {} {:#x} {:#x} -> {}", site(1), tok[2], u32(3), u32(4), ok ? "ok" : "dropped"));
    } else if (op == "read") {
      arity(4);
      const auto v = need(line).read({site(1), parse_bank(tok[2], line), u32(3)});
      result.log.push_back(fmt::format("read {} {} {:#x} -> {}", site(1), tok[2], u32(3),
                                       v ? fmt::format("{:#010x}", *v) : std::string("timeout")));
    } else if (op == "idle") {
      arity(2);
      auto& n = need(line);
      const auto k = parse_number(tok[1], line);
      for (std::uint64_t i = 0; i < k; ++i) n.step();
      result.log.push_back(fmt::format("idle {}", k));
    } else {
      throw Error(fmt::format("line {}: unknown op '{}'", line, op));
    }
  }
  if (!net) throw Error("script has no 'sites' line");
  result.trace = net->trace();
  result.faults = net->faults();
  return result;
}

}  // namespace sitepack
