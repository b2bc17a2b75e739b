#include "support.hpp"

#include <expat.h>
#include <sys/resource.h>
#include <unistd.h>
#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "aekg/rdf/term.hpp"

namespace aekg::testkit {

namespace fs = std::filesystem;

// ---- fixtures ----------------------------------------------------------------

std::string minimal_faers_xml() {
  return R"(<?xml version="1.0" encoding="UTF-8"?>
<ichicsr lang="en">
  <ichicsrmessageheader><messagenumb>1</messagenumb></ichicsrmessageheader>
  <safetyreport>
    <safetyreportid>10001</safetyreportid>
    <receivedate>20231015</receivedate>
    <serious>1</serious>
    <patient>
      <patientonsetage>64</patientonsetage>
      <patientonsetageunit>801</patientonsetageunit>
      <patientagegroup>6</patientagegroup>
      <patientsex>2</patientsex>
      <drug>
        <drugcharacterization>1</drugcharacterization>
        <medicinalproduct>Aspirin</medicinalproduct>
        <activesubstance><activesubstancename>ACETYLSALICYLIC ACID</activesubstancename></activesubstance>
      </drug>
      <reaction><reactionmeddrapt>Nausea</reactionmeddrapt></reaction>
    </patient>
  </safetyreport>
</ichicsr>
)";
}

SafetyReport make_report(std::string id,
                         std::vector<std::pair<std::string, std::vector<std::string>>> drugs,
                         std::vector<std::string> reactions) {
  SafetyReport r;
  r.report_id = std::move(id);
  for (auto& [name, substances] : drugs) {
    DrugRecord d;
    d.medicinal_product = name;
    d.active_substances = substances;
    r.patient.drugs.push_back(std::move(d));
  }
  for (auto& term : reactions) r.patient.reactions.push_back(ReactionRecord{term});
  return r;
}

SafetyReport one_report_two_drugs() {
  return make_report("R1",
                     {{"ASPIRIN", {"ACETYLSALICYLIC ACID"}}, {"IBUPROFEN", {"IBUPROFEN"}}},
                     {"NAUSEA"});
}

CanonicalBatch one_report_batch() {
  CanonicalBatch b;
  b.source_label = "fixture";
  b.reports.push_back(one_report_two_drugs());
  return b;
}

VaersFixture vaers_shared_symptom_fixture() {
  return {
      "VAERS_ID,RECVDATE,AGE_YRS\nA,01/02/2021,34\nB,01/03/2021,57\n",
      "VAERS_ID,SYMPTOM1,SYMPTOMVERSION1,SYMPTOM2,SYMPTOMVERSION2,SYMPTOM3,"
      "SYMPTOMVERSION3,SYMPTOM4,SYMPTOMVERSION4,SYMPTOM5,SYMPTOMVERSION5\n"
      "A,Headache,23.1,,,,,,,,\n"
      "B,Headache,23.1,,,,,,,,\n",
      "VAERS_ID,VAX_TYPE,VAX_MANU\nA,FLU,SANOFI\nB,FLU,SEQIRUS\n",
  };
}

// ---- generators --------------------------------------------------------------

namespace {

const std::vector<std::string>& plain_pool() {
  static const std::vector<std::string> pool = [] {
    std::vector<std::string> p;
    for (char c = 'A'; c <= 'Z'; ++c) p.emplace_back(1, c);
    for (char c = 'a'; c <= 'z'; ++c) p.emplace_back(1, c);
    for (char c = '0'; c <= '9'; ++c) p.emplace_back(1, c);
    return p;
  }();
  return pool;
}

const std::vector<std::string>& exotic_pool() {
  static const std::vector<std::string> pool = {
      "'", "\"", "\\", "&", "<", ">", "/", "-", "_", ".", "%", "#", ":", ";", "{", "}",
      "\xC3\xA9",          // é
      "\xC3\xBC",          // ü
      "\xC3\x9F",          // ß
      "\xE4\xB8\xAD",      // 中
      "\xE2\x82\xAC",      // €
      "\xF0\x9F\x98\x80",  // U+1F600
  };
  return pool;
}

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Names drawn from a small pool so reports share drugs and reactions, with
// case and spacing variants that normalize to the same identity.
std::string pooled_name(Rng& rng, const std::vector<std::string>& pool, const GenOptions& o) {
  std::string base = pool[pick(rng, pool.size())];
  switch (pick(rng, 4)) {
    case 0: break;
    case 1:
      std::transform(base.begin(), base.end(), base.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      break;
    case 2:
      if (o.untrimmed_names) base = "  " + base + " ";
      break;
    case 3: {
      auto sp = base.find(' ');
      if (sp != std::string::npos) base.insert(sp, "  ");
      break;
    }
  }
  return base;
}

const std::vector<std::string>& drug_pool(bool exotic) {
  static const std::vector<std::string> plain = {
      "ASPIRIN", "IBUPROFEN", "METFORMIN", "LISINOPRIL", "ATORVASTATIN", "HUMIRA",
      "ELIQUIS", "XARELTO", "OZEMPIC", "KEYTRUDA", "PREDNISONE", "WARFARIN SODIUM",
      "TYLENOL EXTRA STRENGTH", "OMEPRAZOLE", "AMOXICILLIN"};
  static const std::vector<std::string> with_exotic = [] {
    auto p = plain;
    p.insert(p.end(), {"O'BRIEN'S 5\"", "BACK\\SLASH", "CAF\xC3\x89 NOIR", "A/B", "A_B",
                       "R&D <TEST>", "\xE4\xB8\xAD\xE8\x8D\xAF"});
    return p;
  }();
  return exotic ? with_exotic : plain;
}

const std::vector<std::string>& reaction_pool() {
  static const std::vector<std::string> pool = {
      "NAUSEA", "HEADACHE", "DIZZINESS", "RASH", "FATIGUE", "HEART ATTACK",
      "DRUG INEFFECTIVE", "VOMITING", "DYSPNOEA", "PYREXIA", "OFF LABEL USE"};
  return pool;
}

const std::vector<std::string>& substance_pool() {
  static const std::vector<std::string> pool = {
      "ACETYLSALICYLIC ACID", "IBUPROFEN", "METFORMIN HYDROCHLORIDE", "LISINOPRIL",
      "ATORVASTATIN CALCIUM", "ADALIMUMAB", "APIXABAN", "RIVAROXABAN", "SEMAGLUTIDE",
      "PEMBROLIZUMAB", "PREDNISONE", "WARFARIN", "ACETAMINOPHEN", "OMEPRAZOLE"};
  return pool;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string random_text(Rng& rng, std::size_t min_len, std::size_t max_len, bool exotic) {
  const std::size_t len = std::uniform_int_distribution<std::size_t>(min_len, max_len)(rng);
  std::string out;
  for (std::size_t i = 0; i < len; ++i) {
    if (exotic && chance(rng, 0.25))
      out += exotic_pool()[pick(rng, exotic_pool().size())];
    else if (i > 0 && i + 1 < len && chance(rng, 0.1))
      out += ' ';
    else
      out += plain_pool()[pick(rng, plain_pool().size())];
  }
  return out;
}

SafetyReport random_report(Rng& rng, std::size_t index, const GenOptions& o) {
  SafetyReport r;
  r.report_id = chance(rng, o.p_no_id) ? "" : "R" + std::to_string(100000 + index);
  if (chance(rng, 0.7)) r.receive_date = "2023" + std::to_string(1000 + pick(rng, 200) + 1).substr(1);
  if (chance(rng, 0.6)) r.serious = std::to_string(1 + pick(rng, 2));
  auto& p = r.patient;
  if (chance(rng, 0.6)) p.onset_age = std::to_string(pick(rng, 95));
  if (chance(rng, 0.4)) p.onset_age_unit = "801";
  if (chance(rng, 0.5)) p.age_group = std::to_string(1 + pick(rng, 6));
  if (chance(rng, 0.6)) p.sex = std::to_string(pick(rng, 3));

  if (!chance(rng, o.p_no_drugs)) {
    const int n = 1 + static_cast<int>(pick(rng, static_cast<std::size_t>(o.max_drugs)));
    for (int i = 0; i < n; ++i) {
      DrugRecord d;
      d.medicinal_product = pooled_name(rng, drug_pool(o.exotic_text), o);
      if (chance(rng, 0.5)) d.characterization = std::to_string(1 + pick(rng, 3));
      const auto ns = pick(rng, static_cast<std::size_t>(o.max_substances) + 1);
      for (std::size_t s = 0; s < ns; ++s)
        d.active_substances.push_back(substance_pool()[pick(rng, substance_pool().size())]);
      p.drugs.push_back(std::move(d));
    }
  }
  if (!chance(rng, o.p_no_reactions)) {
    const int n = 1 + static_cast<int>(pick(rng, static_cast<std::size_t>(o.max_reactions)));
    for (int i = 0; i < n; ++i) {
      std::string term = pooled_name(rng, reaction_pool(), o);
      if (o.exotic_text && chance(rng, 0.1)) term += " " + random_text(rng, 1, 6, true);
      p.reactions.push_back(ReactionRecord{term});
    }
  }
  return r;
}

std::vector<SafetyReport> random_reports(Rng& rng, std::size_t n, const GenOptions& o) {
  std::vector<SafetyReport> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_report(rng, i, o));
  return out;
}

CanonicalBatch random_batch(Rng& rng, std::size_t n, const GenOptions& o) {
  return filter_reports(random_reports(rng, n, o),
                        "synthetic-" + std::to_string(n) + "-" + random_text(rng, 0, 4, o.exotic_text));
}

std::string to_faers_xml(const std::vector<SafetyReport>& reports) {
  std::ostringstream x;
  x << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<ichicsr lang=\"en\">\n";
  auto leaf = [&x](const char* name, const std::optional<std::string>& v, const char* indent) {
    if (v) x << indent << '<' << name << '>' << xml_escape(*v) << "</" << name << ">\n";
  };
  for (const auto& r : reports) {
    x << "<safetyreport>\n";
    x << "  <safetyreportversion>1</safetyreportversion>\n";
    leaf("safetyreportid", r.report_id, "  ");
    leaf("receivedate", r.receive_date, "  ");
    leaf("serious", r.serious, "  ");
    x << "  <patient>\n";
    leaf("patientonsetage", r.patient.onset_age, "    ");
    leaf("patientonsetageunit", r.patient.onset_age_unit, "    ");
    leaf("patientagegroup", r.patient.age_group, "    ");
    leaf("patientsex", r.patient.sex, "    ");
    for (const auto& d : r.patient.drugs) {
      x << "    <drug>\n";
      leaf("drugcharacterization", d.characterization, "      ");
      leaf("medicinalproduct", d.medicinal_product, "      ");
      x << "      <drugdosagetext>1 tablet daily</drugdosagetext>\n";
      for (const auto& s : d.active_substances)
        x << "      <activesubstance><activesubstancename>" << xml_escape(s)
          << "</activesubstancename></activesubstance>\n";
      x << "    </drug>\n";
    }
    for (const auto& re : r.patient.reactions)
      x << "    <reaction><reactionmeddrapt>" << xml_escape(re.term)
        << "</reactionmeddrapt><reactionoutcome>6</reactionoutcome></reaction>\n";
    x << "  </patient>\n</safetyreport>\n";
  }
  x << "</ichicsr>\n";
  return x.str();
}

rdf::TripleGraph random_triple_graph(Rng& rng, const TripleGenOptions& o) {
  using namespace rdf;
  TripleGraph g;
  g.namespaces().bind("ex", "http://example.org/ns#");
  std::vector<BlankNode> blanks;
  for (std::size_t i = 0; i < o.blank_nodes; ++i) blanks.push_back(g.new_blank_node());

  const std::vector<std::string> iri_pool = {
      "http://example.org/ns#Alpha", "http://example.org/ns#beta-2",
      "http://example.org/ns#Drug_A%2FB", "http://example.org/ns#_x",
      "http://example.org/other/thing", "http://example.org/other/item.v1",
      "urn:isbn:0451450523", "http://example.org/ns#",
      "http://example.org/path/with~tilde", "http://example.org/q?x=1&y=2",
      std::string(ns::owl) + "Class", std::string(ns::rdfs) + "Class"};
  const std::vector<Iri> predicates = {
      rdf_iri("type"), rdfs_iri("subClassOf"), rdfs_iri("label"), owl_iri("onProperty"),
      Iri{"http://example.org/ns#p1"}, Iri{"http://example.org/ns#has-part"},
      Iri{"http://example.org/other/rel"}, Iri{"urn:x:prop_9"}};
  const std::vector<std::string> datatypes = {
      "", "", std::string(ns::xsd) + "string", std::string(ns::xsd) + "integer",
      "http://example.org/ns#custom"};

  auto random_literal = [&]() {
    std::string lex = random_text(rng, 0, 12, true);
    if (chance(rng, 0.2)) lex += "\n\t\r line";
    if (o.control_characters && chance(rng, 0.2)) lex += std::string("\x01\x1f", 2);
    return Literal{lex, datatypes[pick(rng, datatypes.size())]};
  };

  std::size_t guard = 0;
  while (g.size() < o.triples && guard++ < o.triples * 20) {
    Term s = (!blanks.empty() && chance(rng, 0.3)) ? Term{blanks[pick(rng, blanks.size())]}
                                                   : Term{Iri{iri_pool[pick(rng, iri_pool.size())]}};
    Term p = predicates[pick(rng, predicates.size())];
    Term obj;
    switch (pick(rng, 3)) {
      case 0: obj = Iri{iri_pool[pick(rng, iri_pool.size())]}; break;
      case 1:
        obj = blanks.empty() ? Term{Iri{iri_pool[0]}} : Term{blanks[pick(rng, blanks.size())]};
        break;
      default: obj = random_literal();
    }
    g.add(s, p, obj);
  }
  return g;
}

// ---- oracles -----------------------------------------------------------------

namespace {

using rdf::BlankNode;
using rdf::Term;
using rdf::Triple;

std::string render(const Term& t, const std::map<std::string, std::string>* colors) {
  if (const auto* b = std::get_if<BlankNode>(&t))
    return colors ? "_:" + colors->at(b->label) : std::string("_:");
  return rdf::to_string(t);
}

std::map<std::string, std::string> refine_colors(const rdf::TripleGraph& g) {
  std::set<std::string> labels;
  for (const auto& t : g.triples()) {
    if (auto* b = std::get_if<BlankNode>(&t.subject)) labels.insert(b->label);
    if (auto* b = std::get_if<BlankNode>(&t.object)) labels.insert(b->label);
  }
  std::map<std::string, std::string> colors;
  for (const auto& l : labels) colors[l] = "";
  for (int round = 0; round < 4; ++round) {
    std::map<std::string, std::vector<std::string>> sig;
    for (const auto& t : g.triples()) {
      if (auto* b = std::get_if<BlankNode>(&t.subject))
        sig[b->label].push_back("S " + rdf::to_string(t.predicate) + " " + render(t.object, &colors));
      if (auto* b = std::get_if<BlankNode>(&t.object))
        sig[b->label].push_back("O " + rdf::to_string(t.predicate) + " " + render(t.subject, &colors));
    }
    std::map<std::string, std::string> next;
    for (const auto& l : labels) {
      auto v = sig[l];
      std::sort(v.begin(), v.end());
      std::string joined;
      for (const auto& s : v) joined += s + "|";
      next[l] = std::to_string(std::hash<std::string>{}(joined));
    }
    colors = std::move(next);
  }
  return colors;
}

}  // namespace

bool isomorphic(const rdf::TripleGraph& a, const rdf::TripleGraph& b, std::string* why) {
  auto fail = [why](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (a.size() != b.size())
    return fail("sizes differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));

  auto ground = [](const rdf::TripleGraph& g) {
    std::set<Triple> out;
    for (const auto& t : g.triples())
      if (!rdf::is_blank(t.subject) && !rdf::is_blank(t.object)) out.insert(t);
    return out;
  };
  const auto ga = ground(a), gb = ground(b);
  if (ga != gb) {
    for (const auto& t : ga)
      if (!gb.count(t))
        return fail("missing ground triple " + rdf::to_string(t.subject) + " " +
                    rdf::to_string(t.predicate) + " " + rdf::to_string(t.object));
    return fail("extra ground triples in second graph");
  }

  const auto ca = refine_colors(a), cb = refine_colors(b);
  if (ca.size() != cb.size()) return fail("blank node counts differ");
  std::map<std::string, std::vector<std::string>> classes_b;
  for (const auto& [label, color] : cb) classes_b[color].push_back(label);
  {
    std::map<std::string, std::size_t> hist_a, hist_b;
    for (const auto& [l, c] : ca) ++hist_a[c];
    for (const auto& [l, c] : cb) ++hist_b[c];
    if (hist_a != hist_b) return fail("blank node neighbourhoods differ");
  }

  std::vector<std::string> order;
  for (const auto& [l, c] : ca) order.push_back(l);
  std::map<std::string, std::string> mapping;
  std::set<std::string> used;

  auto check = [&]() {
    auto map_term = [&](const Term& t) -> Term {
      if (auto* bn = std::get_if<BlankNode>(&t)) return BlankNode{mapping.at(bn->label)};
      return t;
    };
    for (const auto& t : a.triples())
      if (!b.contains(map_term(t.subject), t.predicate, map_term(t.object))) return false;
    return true;
  };

  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    if (i == order.size()) return check();
    for (const auto& candidate : classes_b[ca.at(order[i])]) {
      if (used.count(candidate)) continue;
      mapping[order[i]] = candidate;
      used.insert(candidate);
      if (search(i + 1)) return true;
      used.erase(candidate);
    }
    return false;
  };
  if (!search(0)) return fail("no blank node bijection maps the graphs onto each other");
  return true;
}

std::optional<std::string> xml_well_formedness_error(const std::string& document) {
  XML_Parser p = XML_ParserCreateNS(nullptr, '\xff');
  if (!p) return "cannot create parser";
  std::optional<std::string> result;
  if (XML_Parse(p, document.data(), static_cast<int>(document.size()), XML_TRUE) ==
      XML_STATUS_ERROR) {
    result = std::string(XML_ErrorString(XML_GetErrorCode(p))) + " at line " +
             std::to_string(XML_GetCurrentLineNumber(p)) + " column " +
             std::to_string(XML_GetCurrentColumnNumber(p));
  }
  XML_ParserFree(p);
  return result;
}

std::optional<std::string> cypher_literal_error(const std::string& script) {
  std::istringstream in(script);
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line.compare(first, 2, "//") == 0) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    bool in_string = false, in_ident = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const unsigned char c = static_cast<unsigned char>(line[i]);
      if (in_ident) {
        if (c == '`') in_ident = false;
        continue;
      }
      if (!in_string) {
        if (c == '\'') in_string = true;
        else if (c == '`') in_ident = true;
        else if (c == '"') return where + "double quote outside a string literal";
        continue;
      }
      if (c < 0x20) return where + "raw control character inside a literal";
      if (c == '\'') {
        in_string = false;
      } else if (c == '\\') {
        if (i + 1 >= line.size()) return where + "dangling backslash";
        const char e = line[++i];
        if (e == 'u') {
          for (int k = 1; k <= 4; ++k)
            if (i + k >= line.size() || !std::isxdigit(static_cast<unsigned char>(line[i + k])))
              return where + "bad \\u escape";
          i += 4;
        } else if (std::string_view("\\'\"nrtbf").find(e) == std::string_view::npos) {
          return where + "invalid escape \\" + std::string(1, e);
        }
      }
    }
    if (in_string) return where + "unterminated string literal";
    if (in_ident) return where + "unterminated identifier";
  }
  return std::nullopt;
}

std::size_t count_lines_starting_with(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line.compare(first, prefix.size(), prefix) == 0) ++n;
  }
  return n;
}

// ---- files -------------------------------------------------------------------

TempDir::TempDir() {
  std::string tmpl = (fs::temp_directory_path() / "aekg-test-XXXXXX").string();
  if (!::mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

namespace {

void put16(std::string& out, std::uint32_t v) {
  out += static_cast<char>(v & 0xFF);
  out += static_cast<char>((v >> 8) & 0xFF);
}
void put32(std::string& out, std::uint32_t v) {
  put16(out, v & 0xFFFF);
  put16(out, v >> 16);
}
void put64(std::string& out, std::uint64_t v) {
  put32(out, static_cast<std::uint32_t>(v));
  put32(out, static_cast<std::uint32_t>(v >> 32));
}

std::string raw_deflate(const std::string& data) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK)
    throw std::runtime_error("deflateInit2 failed");
  std::string out(deflateBound(&zs, static_cast<uLong>(data.size())), '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  if (deflate(&zs, Z_FINISH) != Z_STREAM_END) throw std::runtime_error("deflate failed");
  out.resize(zs.total_out);
  deflateEnd(&zs);
  return out;
}

}  // namespace

void ZipWriter::add(std::string name, std::string data, bool deflate) {
  items_.push_back({std::move(name), std::move(data), deflate});
}

std::string ZipWriter::bytes(bool zip64) const {
  std::string out, central;
  for (const auto& item : items_) {
    const std::string payload = item.deflate ? raw_deflate(item.data) : item.data;
    const auto crc = static_cast<std::uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(item.data.data()), static_cast<uInt>(item.data.size())));
    const std::uint64_t offset = out.size();
    const std::uint16_t method = item.deflate ? 8 : 0;
    const std::uint16_t version = zip64 ? 45 : 20;

    std::string local_extra;
    if (zip64) {
      put16(local_extra, 0x0001);
      put16(local_extra, 16);
      put64(local_extra, item.data.size());
      put64(local_extra, payload.size());
    }
    put32(out, 0x04034b50);
    put16(out, version);
    put16(out, 0);
    put16(out, method);
    put16(out, 0);
    put16(out, 0x21);
    put32(out, crc);
    put32(out, zip64 ? 0xFFFFFFFFu : static_cast<std::uint32_t>(payload.size()));
    put32(out, zip64 ? 0xFFFFFFFFu : static_cast<std::uint32_t>(item.data.size()));
    put16(out, static_cast<std::uint32_t>(item.name.size()));
    put16(out, static_cast<std::uint32_t>(local_extra.size()));
    out += item.name;
    out += local_extra;
    out += payload;

    std::string central_extra;
    if (zip64) {
      put16(central_extra, 0x0001);
      put16(central_extra, 24);
      put64(central_extra, item.data.size());
      put64(central_extra, payload.size());
      put64(central_extra, offset);
    }
    put32(central, 0x02014b50);
    put16(central, version);
    put16(central, version);
    put16(central, 0);
    put16(central, method);
    put16(central, 0);
    put16(central, 0x21);
    put32(central, crc);
    put32(central, zip64 ? 0xFFFFFFFFu : static_cast<std::uint32_t>(payload.size()));
    put32(central, zip64 ? 0xFFFFFFFFu : static_cast<std::uint32_t>(item.data.size()));
    put16(central, static_cast<std::uint32_t>(item.name.size()));
    put16(central, static_cast<std::uint32_t>(central_extra.size()));
    put16(central, 0);
    put16(central, 0);
    put16(central, 0);
    put32(central, 0);
    put32(central, zip64 ? 0xFFFFFFFFu : static_cast<std::uint32_t>(offset));
    central += item.name;
    central += central_extra;
  }
  const std::uint64_t cd_offset = out.size();
  out += central;
  if (zip64) {
    const std::uint64_t z64_offset = out.size();
    put32(out, 0x06064b50);
    put64(out, 44);
    put16(out, 45);
    put16(out, 45);
    put32(out, 0);
    put32(out, 0);
    put64(out, items_.size());
    put64(out, items_.size());
    put64(out, central.size());
    put64(out, cd_offset);
    put32(out, 0x07064b50);
    put32(out, 0);
    put64(out, z64_offset);
    put32(out, 1);
  }
  put32(out, 0x06054b50);
  put16(out, 0);
  put16(out, 0);
  put16(out, zip64 ? 0xFFFF : static_cast<std::uint32_t>(items_.size()));
  put16(out, zip64 ? 0xFFFF : static_cast<std::uint32_t>(items_.size()));
  put32(out, zip64 ? 0xFFFFFFFFu : static_cast<std::uint32_t>(central.size()));
  put32(out, zip64 ? 0xFFFFFFFFu : static_cast<std::uint32_t>(cd_offset));
  put16(out, 0);
  return out;
}

void ZipWriter::write(const fs::path& path, bool zip64) const { write_file(path, bytes(zip64)); }

std::uint64_t peak_rss_bytes() {
  struct rusage usage {};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;
}

}  // namespace aekg::testkit
