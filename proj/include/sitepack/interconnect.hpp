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

#ifndef SITEPACK_INTERCONNECT_HPP_
#define SITEPACK_INTERCONNECT_HPP_

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "sitepack/core.hpp"

namespace sitepack {

// Field widths of the memory-mapped address. They are configuration
// constants and never depend on the number of sites.
struct AddressLayout {
  int site_bits = 7;
  int bank_bits = 1;
  int word_bits = 32;
  int data_bits = 32;

  int address_bits() const { return site_bits + bank_bits + word_bits; }
  int h2b_bits() const { return 1 + address_bits() + data_bits; }
  int b2h_bits() const { return site_bits + word_bits + data_bits; }
  std::uint64_t max_sites() const { return std::uint64_t{1} << site_bits; }
};

enum class Command : std::uint8_t { kRead = 0, kWrite = 1 };
enum class Bank : std::uint8_t { kPeriphery = 0, kUser = 1 };

// Periphery bank word map; other periphery words read as 0.
inline constexpr std::uint32_t kRegRstnSoft = 0;
inline constexpr std::uint32_t kRegEn = 1;
inline constexpr std::uint32_t kRegEnPwrBar = 2;

struct Address {
  std::uint32_t site = 0;
  Bank bank = Bank::kUser;
  std::uint32_t word = 0;

  bool operator==(const Address&) const = default;
};

std::uint64_t encode_address(const Address& a, const AddressLayout& layout = {});
Address decode_address(std::uint64_t raw, const AddressLayout& layout = {});

// `tag` is simulator bookkeeping for conservation checks, not a wire field.
struct H2BMessage {
  Command command = Command::kRead;
  Address address;
  std::uint32_t data = 0;
  std::uint64_t tag = 0;
};

struct B2HMessage {
  std::uint32_t site = 0;
  std::uint32_t word = 0;
  std::uint32_t data = 0;
  std::uint64_t tag = 0;
};

std::string payload_hex(const H2BMessage& m, const AddressLayout& layout = {});
std::string payload_hex(const B2HMessage& m, const AddressLayout& layout = {});

struct Registers {
  bool rstn_soft = true;
  bool en = false;
  bool en_pwr_bar = false;
};

inline constexpr int kCrossingLatency = 2;

struct Station {
  std::uint32_t id = 0;  // chip site address
  std::optional<H2BMessage> h2b;
  std::optional<B2HMessage> b2h;
  std::optional<B2HMessage> resp;  // local response waiting to join the b2h stream
  std::array<std::optional<H2BMessage>, kCrossingLatency> crossing;  // user-domain delay line
  Registers regs;
  std::map<std::uint32_t, std::uint32_t> user_bank;

  bool user_alive() const { return regs.rstn_soft && !regs.en_pwr_bar; }
  bool busy() const;
};

struct TraceEvent {
  std::uint64_t cycle = 0;
  int station = -1;  // chain position; -1 for the controller
  std::string event;
  std::string payload;
};

std::string trace_csv(const std::vector<TraceEvent>& events);

struct NetworkConfig {
  AddressLayout address;
  // physical_order[p] is the site address of the station at chain position p.
  // Empty means identity.
  std::vector<std::uint32_t> physical_order;
  bool record_trace = false;
  // Mutation hook for checker tests: every ready signal reads low.
  bool ready_tied_low = false;
};

enum class Fate { kInFlight, kConsumed, kDropped, kTimedOut };

class Network {
 public:
  // Throws Error for n < 1, n beyond the site address space, or a bad order.
  explicit Network(int n_sites, NetworkConfig config = {});

  int size() const { return static_cast<int>(stations_.size()); }
  std::uint64_t cycle() const { return cycle_; }
  const NetworkConfig& config() const { return config_; }
  const std::vector<Station>& stations() const { return stations_; }
  const Station& station_for_site(std::uint32_t site) const;
  std::uint64_t timeout_cycles() const { return 4 * static_cast<std::uint64_t>(size()) + 16; }

  // Queues a message at the controller; returns its tag.
  std::uint64_t inject(H2BMessage m);
  void step();
  bool idle() const;  // nothing pending anywhere, controller included
  // Steps until idle; returns false if `max_cycles` elapse first.
  bool drain(std::uint64_t max_cycles = 1'000'000);

  // Blocking helpers. A write returns false if it was dropped. A read returns
  // nullopt once it has gone unanswered for timeout_cycles().
  bool mmio_write(std::uint64_t address, std::uint32_t data);
  std::optional<std::uint32_t> mmio_read(std::uint64_t address);
  bool write(Address a, std::uint32_t data) { return mmio_write(encode_address(a, config_.address), data); }
  std::optional<std::uint32_t> read(Address a) { return mmio_read(encode_address(a, config_.address)); }

  // Disables every other site, then enables `site`; throws if more than one
  // site ends up enabled.
  void activate_site(std::uint32_t site);
  int active_count() const;

  const std::deque<H2BMessage>& host_queue() const { return host_; }
  const std::vector<B2HMessage>& responses() const { return responses_; }
  const std::map<std::uint64_t, Fate>& fates() const { return fates_; }
  const std::vector<std::string>& faults() const { return faults_; }
  const std::vector<TraceEvent>& trace() const { return trace_; }
  std::uint64_t injected() const { return next_tag_; }
  std::uint64_t accepted() const { return accepted_; }  // entered station 0

  // Fixed-width serialization of one station's registers and queues (user
  // bank excluded: it is the user's storage, not interconnect state).
  std::vector<bool> station_bits(int position) const;
  // Canonical encoding of the whole network minus tags and counters; equal
  // strings mean behaviourally identical states.
  std::string state_key() const;

 private:
  void emit(int station, std::string_view event, std::string payload);
  bool ready(bool empty_at_start) const { return empty_at_start && !config_.ready_tied_low; }
  void execute(Station& s, const H2BMessage& m, int position);
  void finish(std::uint64_t tag, Fate fate);

  NetworkConfig config_;
  std::vector<Station> stations_;
  std::deque<H2BMessage> host_;
  std::vector<B2HMessage> responses_;
  std::map<std::uint64_t, Fate> fates_;
  std::vector<std::string> faults_;
  std::vector<TraceEvent> trace_;
  std::uint64_t cycle_ = 0;
  std::uint64_t next_tag_ = 0;
  std::uint64_t accepted_ = 0;
};

enum class Topology { kStar, kOpenChain };

// Wire bundles needed at the controller boundary.
int track_scaling(Topology topology, int n);
// Width in bits of one bidirectional hop bundle (h2b + b2h payloads).
int bundle_width_bits(const AddressLayout& layout = {});

struct DeadlockReport {
  bool deadlock_free = true;
  bool exhaustive = false;
  std::size_t states_explored = 0;
  std::uint64_t random_cycles = 0;
  std::vector<std::string> counterexample;
};

// Exhaustive search (n <= 3) over a bounded alphabet of per-site requests,
// then randomized traffic for `trace_length` cycles. A deadlock is a state
// with outstanding work in which a step makes no progress.
DeadlockReport check_deadlock_freedom(int n_sites, std::uint64_t trace_length, std::uint64_t seed,
                                      const NetworkConfig& config = {}, int max_injections = 3);

// Saturating injection of user writes to the last site; accepted msgs/cycle.
double measure_throughput(int n_sites, std::uint64_t cycles);

struct ScriptResult {
  std::vector<std::string> log;  // one line per read/write/activate
  std::vector<TraceEvent> trace;
  std::vector<std::string> faults;
};

// Text scripts, one op per line ('#' starts a comment):
//   sites N | activate S | write S user|periph WORD DATA | read S user|periph WORD | idle K
// Numbers accept 0x prefixes. Throws Error with the line number on bad input.
ScriptResult run_script(std::string_view text, bool record_trace = true);

}  // namespace sitepack

#endif  // SITEPACK_INTERCONNECT_HPP_
