#include "ovc/wire.h"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "ovc/errors.h"

namespace ovc {

namespace {

constexpr char kMagic[4] = {'O', 'V', 'C', '1'};

void put_u16(std::ostream& out, std::uint16_t v) {
  const char b[2] = {static_cast<char>(v >> 8), static_cast<char>(v & 0xFF)};
  out.write(b, 2);
}

void put_u32(std::ostream& out, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v >> 24), static_cast<char>((v >> 16) & 0xFF),
                     static_cast<char>((v >> 8) & 0xFF), static_cast<char>(v & 0xFF)};
  out.write(b, 4);
}

}  // namespace

void write_packets(std::ostream& out, std::uint32_t m, std::span<const CodedPacket> packets) {
  out.write(kMagic, 4);
  put_u32(out, m);
  for (const auto& p : packets) {
    if (p.payload.size() != m)
      throw IoError("write_packets: packet payload length " + std::to_string(p.payload.size()) +
                    " does not match stream header m=" + std::to_string(m));
    put_u16(out, p.class_index);
    out.write(reinterpret_cast<const char*>(p.coefficients.data()),
              static_cast<std::streamsize>(p.coefficients.size()));
    out.write(reinterpret_cast<const char*>(p.payload.data()),
              static_cast<std::streamsize>(p.payload.size()));
  }
  if (!out) throw IoError("write_packets: stream write failed");
}

PacketStream read_packets(std::istream& in, const ClassScheme& scheme) {
  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0)
    throw IoError("packet stream: bad or missing magic (expected \"OVC1\")");
  unsigned char hdr[4];
  in.read(reinterpret_cast<char*>(hdr), 4);
  if (in.gcount() != 4) throw IoError("packet stream: truncated header");
  PacketStream out;
  out.m = (static_cast<std::uint32_t>(hdr[0]) << 24) | (static_cast<std::uint32_t>(hdr[1]) << 16) |
          (static_cast<std::uint32_t>(hdr[2]) << 8) | static_cast<std::uint32_t>(hdr[3]);
  for (;;) {
    unsigned char ib[2];
    in.read(reinterpret_cast<char*>(ib), 2);
    if (in.gcount() == 0 && in.eof()) break;  // clean end at a packet boundary
    if (in.gcount() != 2) throw IoError("packet stream: truncated class index");
    const std::uint16_t cls =
        static_cast<std::uint16_t>((static_cast<unsigned>(ib[0]) << 8) | ib[1]);
    if (cls >= scheme.num_classes())
      throw IoError("packet stream: class index " + std::to_string(cls) +
                    " out of range (scheme has " + std::to_string(scheme.num_classes()) +
                    " classes)");
    CodedPacket p;
    p.class_index = cls;
    p.coefficients.resize(scheme.class_size(cls));
    in.read(reinterpret_cast<char*>(p.coefficients.data()),
            static_cast<std::streamsize>(p.coefficients.size()));
    if (static_cast<std::size_t>(in.gcount()) != p.coefficients.size())
      throw IoError("packet stream: truncated coefficients");
    p.payload.resize(out.m);
    in.read(reinterpret_cast<char*>(p.payload.data()),
            static_cast<std::streamsize>(p.payload.size()));
    if (static_cast<std::size_t>(in.gcount()) != p.payload.size())
      throw IoError("packet stream: truncated payload");
    out.packets.push_back(std::move(p));
  }
  return out;
}

void write_packet_file(const std::string& path, std::uint32_t m,
                       std::span<const CodedPacket> packets) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  write_packets(f, m, packets);
  if (!f) throw IoError("write failed: " + path);
}

PacketStream read_packet_file(const std::string& path, const ClassScheme& scheme) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for reading: " + path);
  return read_packets(f, scheme);
}

}  // namespace ovc
