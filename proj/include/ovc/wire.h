#pragma once

// Byte-exact packet stream format.
//
//   stream  := magic payload-length packet*
//   magic   := "OVC1" (4 bytes)
//   payload-length := u32 big-endian (m, symbols per packet payload)
//   packet  := class-index coefficients payload
//   class-index  := u16 big-endian
//   coefficients := d_l bytes, ascending member order (d_l from the scheme)
//   payload      := m bytes
//
// Decoding a stream therefore requires the class scheme (it defines each
// class's coefficient count). All malformed input (bad magic, unknown class
// index, truncation mid-packet) raises IoError.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ovc/codec.h"
#include "ovc/scheme.h"

namespace ovc {

void write_packets(std::ostream& out, std::uint32_t m, std::span<const CodedPacket> packets);

struct PacketStream {
  std::uint32_t m = 0;
  std::vector<CodedPacket> packets;
};
PacketStream read_packets(std::istream& in, const ClassScheme& scheme);

void write_packet_file(const std::string& path, std::uint32_t m,
                       std::span<const CodedPacket> packets);
PacketStream read_packet_file(const std::string& path, const ClassScheme& scheme);

}  // namespace ovc
