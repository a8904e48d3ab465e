/*
 * Copyright 2026 The Lexplain Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LEXPLAIN_PIPELINE_SYNTHETIC_H_
#define LEXPLAIN_PIPELINE_SYNTHETIC_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lexplain/corpus/judgment.h"
#include "lexplain/error.h"
#include "lexplain/random.h"

namespace lexplain::pipeline {

struct SyntheticCategory {
  std::string name;
  std::array<std::string, 3> keywords;
};

inline const std::vector<SyntheticCategory>& SyntheticCategories() {
  static const std::vector<SyntheticCategory> kCategories = {
      {"Derecho de Familia", {"divorcio", "custodia", "manutencion"}},
      {"Derecho Laboral", {"despido", "salario", "convenio"}},
      {"Derecho Penal", {"delito", "condena", "prision"}},
      {"Derecho Mercantil", {"sociedad", "concurso", "quiebra"}},
      {"Derecho Administrativo", {"licencia", "ayuntamiento", "expropiacion"}},
  };
  return kCategories;
}

// Vocabulary shared by every category.
inline const std::vector<std::string>& SyntheticNoise() {
  static const std::vector<std::string> kNoise = {
      "tribunal",    "recurso",     "demanda",      "parte",       "juzgado",    "instancia",
      "procedimiento", "sala",      "magistrado",   "ponente",     "prueba",     "hechos",
      "fundamento",  "derecho",     "articulo",     "ley",         "codigo",     "norma",
      "apelacion",   "casacion",    "recurrente",   "recurrida",   "actor",      "demandado",
      "letrado",     "procurador",  "audiencia",    "provincial",  "supremo",    "auto",
      "providencia", "escrito",     "plazo",        "termino",     "motivo",     "alegacion",
      "infraccion",  "doctrina",    "jurisprudencia", "criterio",  "interpretacion", "aplicacion",
      "resolucion",  "fallo",       "estimacion",   "desestimacion", "costas",   "pronunciamiento",
      "valoracion",  "documental",  "testifical",   "pericial",    "informe",    "dictamen",
      "expediente",  "tramite",     "notificacion", "citacion",    "comparecencia", "vista",
      "oral",        "publica",     "secretario",   "diligencia",  "ordenacion", "competencia",
      "jurisdiccion", "materia",    "cuantia",      "importe",     "euros",      "cantidad",
      "interes",     "legal",       "mora",         "pago",        "obligacion", "cumplimiento",
      "incumplimiento", "responsabilidad", "dano",  "perjuicio",   "indemnizacion", "reclamacion",
      "solicitud",   "peticion",    "pretension",   "oposicion",   "excepcion",  "nulidad",
      "anulabilidad", "caducidad",  "prescripcion", "accion",      "ejercicio",  "titular",
      "titularidad", "persona",     "fisica",       "juridica",    "entidad",    "organismo",
      "domicilio",   "residencia",  "fecha",        "ano",         "mes",        "dia",
      "primero",     "segundo",     "tercero",      "cuarto",      "quinto",     "anterior",
      "posterior",   "presente",    "citado",       "mencionado",  "referido",   "dispuesto",
      "establecido", "previsto",    "regulado",     "aplicable",   "vigente",    "redaccion",
      "texto",       "refundido",   "reglamento",   "decreto",     "orden",      "disposicion",
      "adicional",   "transitoria", "final",        "derogatoria", "constitucion", "principio",
      "tutela",      "judicial",    "efectiva",     "defensa",     "igualdad",   "seguridad",
      "motivacion",  "congruencia", "arbitrariedad", "razonable",  "suficiente", "acreditado",
  };
  return kNoise;
}

struct SyntheticOptions {
  std::uint64_t seed = 0;
  std::size_t docs_per_category = 200;
  std::size_t min_words = 40;
  std::size_t max_words = 70;
  // Chance that a document also mentions one keyword of another category.
  double cross_keyword_rate = 0.05;
  double alternative_rate = 0.15;
  std::string jurisdiction = "Civil";
};

// Five categories with three planted keywords each over shared noise. Every
// document carries one to three of its category's keywords in the
// fundamentals; the precedents mention another category's keywords and must
// not influence classification.
inline std::vector<corpus::Judgment> GenerateSyntheticCorpus(const SyntheticOptions& options) {
  if (options.min_words == 0 || options.max_words < options.min_words) {
    throw Error("invalid synthetic document length range");
  }
  const auto& categories = SyntheticCategories();
  const auto& noise = SyntheticNoise();
  const std::size_t k = categories.size();
  Rng rng(DeriveSeed(options.seed, 0x5E7));

  const auto noise_words = [&](std::size_t n) {
    std::vector<std::string> words;
    for (std::size_t i = 0; i < n; ++i) words.push_back(noise[rng.Below(noise.size())]);
    return words;
  };
  const auto join = [](const std::vector<std::string>& words) {
    std::string out;
    for (const std::string& w : words) {
      if (!out.empty()) out += ' ';
      out += w;
    }
    return out;
  };

  std::vector<corpus::Judgment> judgments;
  for (std::size_t i = 0; i < options.docs_per_category * k; ++i) {
    const std::size_t c = i % k;
    const SyntheticCategory& cat = categories[c];
    corpus::Judgment j;
    j.id = "SYN-" + std::to_string(100000 + i).substr(1);
    j.jurisdiction = options.jurisdiction;
    j.primary_category = cat.name;
    j.header = "Sentencia numero " + std::to_string(i + 1) + " de la " +
               join(noise_words(4));

    const std::size_t length =
        options.min_words + rng.Below(options.max_words - options.min_words + 1);
    std::vector<std::string> body = noise_words(length);
    std::array<std::size_t, 3> order = {0, 1, 2};
    rng.Shuffle(std::span<std::size_t>(order));
    const std::size_t planted = 1 + rng.Below(3);
    for (std::size_t p = 0; p < planted; ++p) {
      const std::size_t repeats = 1 + rng.Below(3);
      for (std::size_t r = 0; r < repeats; ++r) {
        body.insert(body.begin() + static_cast<std::ptrdiff_t>(rng.Below(body.size() + 1)),
                    cat.keywords[order[p]]);
      }
    }
    if (rng.Uniform() < options.cross_keyword_rate) {
      const std::size_t other = (c + 1 + rng.Below(k - 1)) % k;
      body.insert(body.begin() + static_cast<std::ptrdiff_t>(rng.Below(body.size() + 1)),
                  categories[other].keywords[rng.Below(3)]);
    }
    j.fundamentals = join(body);

    const std::size_t decoy = (c + 1 + rng.Below(k - 1)) % k;
    j.precedents = join(noise_words(10)) + " " + categories[decoy].keywords[0] + " " +
                   categories[decoy].keywords[1];
    j.decision = "Se " + std::string(rng.Below(2) == 0 ? "estima" : "desestima") + " el recurso";

    if (rng.Uniform() < options.alternative_rate) {
      j.alt_categories.push_back(categories[(c + 1 + rng.Below(k - 1)) % k].name);
    }
    judgments.push_back(std::move(j));
  }
  return judgments;
}

}  // namespace lexplain::pipeline

#endif  // LEXPLAIN_PIPELINE_SYNTHETIC_H_
