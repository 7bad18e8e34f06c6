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

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "sitepack/interconnect.hpp"

using namespace sitepack;

namespace {

// Straight-line latency model of one message through an otherwise empty
// chain: one cycle to enter station 0, one per hop, one to consume, the
// user-domain crossing, then for reads one cycle to join the b2h stream,
// one per hop back and one to deliver. Returns the zero-based cycle in
// which the message completes.
std::uint64_t reference_completion(int position, Command cmd, Bank bank) {
  std::uint64_t c = static_cast<std::uint64_t>(position);  // sits in h2b[position] after this cycle
  c += 1;                                                  // consume
  if (bank == Bank::kUser) c += kCrossingLatency;          // crossing, then execute
  if (cmd == Command::kWrite) return c;
  return c + 1 + static_cast<std::uint64_t>(position) + 1;
}

std::uint64_t run_one(Network& net, H2BMessage m) {
  const auto tag = net.inject(m);
  while (net.fates().at(tag) == Fate::kInFlight) {
    net.step();
    REQUIRE(net.cycle() < 10000);
  }
  const std::uint64_t done = net.cycle() - 1;
  REQUIRE(net.drain());
  return done;
}

H2BMessage msg(Command c, std::uint32_t site, Bank b, std::uint32_t word, std::uint32_t data = 0) {
  return {c, {site, b, word}, data, 0};
}

}  // namespace

TEST_SUITE("interconnect") {
  TEST_CASE("network size limits") {
    CHECK_THROWS_AS(Network(0), Error);
    CHECK_THROWS_AS(Network(129), Error);
    CHECK(Network(128).size() == 128);
    CHECK(Network(1).size() == 1);
    NetworkConfig bad;
    bad.physical_order = {0, 0, 1};
    CHECK_THROWS_AS(Network(3, bad), Error);
  }

  TEST_CASE("fresh network is disabled and empty") {
    Network net(4);
    CHECK(net.idle());
    CHECK(net.active_count() == 0);
    for (const auto& s : net.stations()) {
      CHECK_FALSE(s.regs.en);
      CHECK_FALSE(s.busy());
    }
  }

  TEST_CASE("stepping an empty network changes nothing") {
    Network net(5);
    const auto key = net.state_key();
    for (int i = 0; i < 10; ++i) net.step();
    CHECK(net.state_key() == key);
    CHECK(net.trace().empty());
    CHECK(net.cycle() == 10);
  }

  TEST_CASE("uncontended latency matches the reference interpreter") {
    for (int n = 1; n <= 6; ++n)
      for (int p = 0; p < n; ++p)
        for (Command c : {Command::kRead, Command::kWrite})
          for (Bank b : {Bank::kUser, Bank::kPeriphery}) {
            Network net(n);
            const auto start = net.cycle();
            const auto done = run_one(net, msg(c, static_cast<std::uint32_t>(p), b, 7, 1));
            CHECK(done - start == reference_completion(p, c, b));
          }
  }

  TEST_CASE("address fields") {
    const AddressLayout l;
    CHECK(l.address_bits() == 40);
    CHECK(l.h2b_bits() == 73);
    CHECK(l.max_sites() == 128);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
      const Address a{static_cast<std::uint32_t>(rng() % 128), rng() % 2 ? Bank::kUser : Bank::kPeriphery,
                      static_cast<std::uint32_t>(rng())};
      const auto raw = encode_address(a);
      CHECK(raw < (std::uint64_t{1} << 40));
      CHECK(decode_address(raw) == a);
    }
  }

  TEST_CASE("write then read back user memory") {
    Network net(4);
    CHECK(net.write({2, Bank::kUser, 0x10}, 42));
    CHECK(net.read({2, Bank::kUser, 0x10}) == 42u);
    CHECK(net.read({1, Bank::kUser, 0x10}) == 0u);
    CHECK(net.read({2, Bank::kUser, 0x11}) == 0u);
  }

  TEST_CASE("power-off blanks the user bank but not the periphery") {
    Network net(3);
    net.write({1, Bank::kUser, 5}, 9);
    net.write({1, Bank::kPeriphery, kRegEnPwrBar}, 1);
    CHECK(net.read({1, Bank::kUser, 5}) == 0u);
    CHECK(net.read({1, Bank::kPeriphery, kRegEnPwrBar}) == 1u);
    net.write({1, Bank::kUser, 6}, 3);
    net.write({1, Bank::kPeriphery, kRegEnPwrBar}, 0);
    CHECK(net.read({1, Bank::kUser, 5}) == 9u);
    CHECK(net.read({1, Bank::kUser, 6}) == 0u);
    CHECK(net.read({1, Bank::kPeriphery, 7}) == 0u);
  }

  TEST_CASE("soft reset clears user memory") {
    Network net(2);
    net.write({0, Bank::kUser, 1}, 5);
    net.write({0, Bank::kPeriphery, kRegRstnSoft}, 0);
    CHECK(net.read({0, Bank::kUser, 1}) == 0u);
    net.write({0, Bank::kPeriphery, kRegRstnSoft}, 1);
    CHECK(net.read({0, Bank::kUser, 1}) == 0u);
  }

  TEST_CASE("addresses past the tied-off end time out") {
    Network net(3);
    CHECK_FALSE(net.read({4, Bank::kPeriphery, 0}).has_value());
    CHECK_FALSE(net.write({4, Bank::kUser, 0}, 1));
    // The read logs its drop and then its timeout; the write only its drop.
    CHECK(net.faults().size() == 3);
    CHECK(net.idle());
  }

  TEST_CASE("activation keeps one site enabled") {
    Network net(8);
    net.activate_site(3);
    net.activate_site(5);
    CHECK(net.active_count() == 1);
    CHECK(net.station_for_site(5).regs.en);
    CHECK_FALSE(net.station_for_site(3).regs.en);
    std::map<std::uint32_t, int> enabled;
    for (int round = 0; round < 2; ++round)
      for (std::uint32_t s = 0; s < 8; ++s) {
        net.activate_site(s);
        CHECK(net.active_count() == 1);
        for (const auto& st : net.stations()) enabled[st.id] += st.regs.en;
      }
    for (std::uint32_t s = 0; s < 8; ++s) CHECK(enabled[s] == 2);
  }

  TEST_CASE("bursts across activation switches lose nothing") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 2 + trial % 7;
      Network net(n);
      std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> mem;
      std::map<std::uint32_t, bool> en;
      std::vector<std::uint64_t> tags;
      for (int i = 0; i < 60; ++i) {
        const auto site = static_cast<std::uint32_t>(rng() % static_cast<unsigned>(n));
        if (rng() % 5 == 0) {
          const bool on = rng() % 2;
          tags.push_back(net.inject(msg(Command::kWrite, site, Bank::kPeriphery, kRegEn, on)));
          en[site] = on;
        } else {
          const auto word = static_cast<std::uint32_t>(rng() % 4);
          const auto data = static_cast<std::uint32_t>(rng());
          tags.push_back(net.inject(msg(Command::kWrite, site, Bank::kUser, word, data)));
          mem[{site, word}] = data;
        }
        if (rng() % 3 == 0) net.step();
      }
      REQUIRE(net.drain());
      for (auto t : tags) CHECK(net.fates().at(t) == Fate::kConsumed);
      for (const auto& [k, v] : mem) CHECK(net.read({k.first, Bank::kUser, k.second}) == v);
      for (const auto& [s, on] : en) CHECK(net.station_for_site(s).regs.en == on);
    }
  }

  TEST_CASE("long random traffic conserves messages") {
    std::mt19937_64 rng(77);
    const int n = 25;
    Network net(n);
    std::set<std::uint64_t> reads;
    for (std::uint64_t c = 0; c < 20000; ++c) {
      if (c % 1000 == 0) {
        REQUIRE(net.drain());
        net.activate_site(static_cast<std::uint32_t>(rng() % n));
      }
      if (rng() % 3 == 0) {
        const auto site = static_cast<std::uint32_t>(rng() % (n + 2));
        const auto bank = rng() % 4 ? Bank::kUser : Bank::kPeriphery;
        const auto word = bank == Bank::kUser ? static_cast<std::uint32_t>(rng() % 8) : 5u;
        const bool read = rng() % 2;
        const auto tag = net.inject(msg(read ? Command::kRead : Command::kWrite, site, bank, word, 1));
        if (read && site < static_cast<std::uint32_t>(n)) reads.insert(tag);
      }
      net.step();
      CHECK(net.active_count() <= 1);
    }
    REQUIRE(net.drain());
    for (const auto& [tag, fate] : net.fates()) CHECK(fate != Fate::kInFlight);
    std::map<std::uint64_t, int> answered;
    for (const auto& r : net.responses()) ++answered[r.tag];
    for (auto t : reads) CHECK(answered[t] == 1);
    for (const auto& [t, k] : answered) CHECK(reads.count(t));
  }

  TEST_CASE("saturated throughput is one message every other cycle") {
    for (int n : {1, 25, 100}) CHECK(measure_throughput(n, 20000) == doctest::Approx(0.5).epsilon(0.04));
  }

  TEST_CASE("per-station state does not grow with the chain") {
    const auto ref = Network(1).station_bits(0).size();
    CHECK(ref > 0);
    for (int n : {25, 100}) {
      Network net(n);
      for (int p = 0; p < n; ++p) CHECK(net.station_bits(p).size() == ref);
    }
  }

  TEST_CASE("track scaling") {
    CHECK(track_scaling(Topology::kStar, 1) == 1);
    CHECK(track_scaling(Topology::kOpenChain, 1) == 1);
    CHECK(track_scaling(Topology::kStar, 50) == 50);
    for (int n : {5, 25, 100}) CHECK(track_scaling(Topology::kOpenChain, n) == 1);
    CHECK(bundle_width_bits() == AddressLayout{}.h2b_bits() + AddressLayout{}.b2h_bits());
  }

  TEST_CASE("small chains are deadlock free") {
    for (int n : {1, 2}) {
      const auto r = check_deadlock_freedom(n, 2000, 1);
      CHECK(r.deadlock_free);
      CHECK(r.exhaustive);
      CHECK(r.states_explored > 0);
      CHECK(r.counterexample.empty());
    }
  }

  TEST_CASE("tying ready low produces a counterexample") {
    NetworkConfig cfg;
    cfg.ready_tied_low = true;
    const auto r = check_deadlock_freedom(2, 200, 1, cfg);
    CHECK_FALSE(r.deadlock_free);
    CHECK_FALSE(r.counterexample.empty());
  }

  TEST_CASE("physical order does not change read results") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 3 + trial;
      NetworkConfig shuffled;
      for (int i = 0; i < n; ++i) shuffled.physical_order.push_back(static_cast<std::uint32_t>(i));
      std::shuffle(shuffled.physical_order.begin(), shuffled.physical_order.end(), rng);
      Network a(n), b(n, shuffled);
      for (int op = 0; op < 40; ++op) {
        const Address addr{static_cast<std::uint32_t>(rng() % static_cast<unsigned>(n)),
                           rng() % 4 ? Bank::kUser : Bank::kPeriphery, static_cast<std::uint32_t>(rng() % 3)};
        if (rng() % 2) {
          const auto d = static_cast<std::uint32_t>(rng());
          CHECK(a.write(addr, d) == b.write(addr, d));
        } else {
          CHECK(a.read(addr) == b.read(addr));
        }
      }
    }
  }

  TEST_CASE("scripts") {
    const auto r = run_script("sites 4\nactivate 2\nwrite 2 user 0x10 42\nread 2 user 0x10\nread 9 periph 0\n");
    REQUIRE(r.log.size() == 5);
    CHECK(r.log[0] == "sites 4");
    CHECK(r.log[3] == "read 2 user 0x10 -> 0x0000002a");
    CHECK(r.log[4] == "read 9 periph 0x0 -> timeout");
    CHECK(r.faults.size() == 2);
    CHECK_FALSE(r.trace.empty());
    const auto again = run_script("sites 4\nactivate 2\nwrite 2 user 0x10 42\nread 2 user 0x10\nread 9 periph 0\n");
    CHECK(trace_csv(again.trace) == trace_csv(r.trace));
    CHECK(trace_csv({}) == "cycle,station,event,payload_hex\n");
  }

  TEST_CASE("script errors name the line") {
    auto message = [](std::string_view text) {
      try {
        run_script(text);
      } catch (const Error& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    CHECK(message("sites 2\nfrobnicate 1\n").find("line 2") != std::string::npos);
    CHECK(message("read 0 user 0\n").find("line 1") != std::string::npos);
    CHECK(message("sites 2\nwrite 0 user 1\n").find("line 2") != std::string::npos);
    CHECK(message("sites 2\nread 0 attic 1\n").find("line 2") != std::string::npos);
    CHECK(message("sites 2\nwrite 0 user 1 0x1ffffffff\n").find("line 2") != std::string::npos);
    CHECK(message("sites 0\n").find("least one") != std::string::npos);
    CHECK_FALSE(message("# nothing\n").empty());
  }
}
