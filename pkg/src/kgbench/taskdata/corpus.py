"""Authored source content for the shipped task data.

Everything here is original desk-scale fixture content: a small
organizational graph (people, departments, who knows whom), a fact sheet
for the extraction task, and two further small knowledge graphs with
question/query sets. The build script in :mod:`kgbench.taskdata.build`
turns this into the shipped task-data containers.
"""

from __future__ import annotations

ORG_PREFIX = "http://example.org/org#"
FOAF_PREFIX = "http://xmlns.com/foaf/0.1/"

ORG_GRAPH_TURTLE = """\
@prefix : <http://example.org/org#> .
@prefix foaf: <http://xmlns.com/foaf/0.1/> .

:acme a :Organization ;
    :name "ACME Analytics"@en ;
    :foundedYear 1999 ;
    :hasDepartment :itsupport, :research, :sales .

:itsupport a :Department ;
    :name "IT Support"@en .
:research a :Department ;
    :name "Research"@en .
:sales a :Department ;
    :name "Sales"@en .

:anne a foaf:Person ;
    foaf:firstName "Anne" ;
    foaf:age 34 ;
    :worksFor :research ;
    :headOf :research ;
    :room "R210" .
:bob a foaf:Person ;
    foaf:firstName "Bob" ;
    foaf:age 27 ;
    :worksFor :sales ;
    :room "S102" .
:carlos a foaf:Person ;
    foaf:firstName "Carlos" ;
    foaf:age 41 ;
    :worksFor :research ;
    :room "R214" .
:dana a foaf:Person ;
    foaf:firstName "Dana" ;
    foaf:age 29 ;
    :worksFor :sales ;
    :headOf :sales ;
    :room "S101" .
:erika a foaf:Person ;
    foaf:firstName "Erika" ;
    foaf:age 38 ;
    :worksFor :itsupport ;
    :headOf :itsupport ;
    :room "T005" .

:anne foaf:knows :bob, :carlos .
:bob foaf:knows :dana .
:carlos foaf:knows :anne .
:dana foaf:knows :erika .
:erika foaf:knows :anne .
"""

# Variations of the organizational graph for the syntax-fix task: each keeps
# a different slice of the full graph so the five entries per format differ.
ORG_VARIANT_DROPS = [
    (),  # full graph
    ("erika", "itsupport"),
    ("dana", "sales", "bob"),
    ("carlos", "research"),
    ("acme",),
]

FACT_SHEET = """\
Company fact sheet: Nimbus Robotics

- Nimbus Robotics (:nimbus) is an organization (:Organization).
- The name of :nimbus is "Nimbus Robotics" (property :name, English label).
- :nimbus was founded in the year 2012 (property :foundedYear, integer).
- Tara (:tara) is a person (foaf:Person).
- The first name of :tara is "Tara" (property foaf:firstName).
- :tara is 35 years old (property foaf:age, integer).
- :tara works for :nimbus (property :worksFor).
- Ivo (:ivo) is a person (foaf:Person).
- The first name of :ivo is "Ivo" (property foaf:firstName).
- :ivo is 28 years old (property foaf:age, integer).
- :ivo works for :nimbus (property :worksFor).
- :tara knows :ivo (property foaf:knows).
"""

FACT_SHEET_GOLD_TURTLE = """\
@prefix : <http://example.org/org#> .
@prefix foaf: <http://xmlns.com/foaf/0.1/> .

:nimbus a :Organization ;
    :name "Nimbus Robotics"@en ;
    :foundedYear 2012 .

:tara a foaf:Person ;
    foaf:firstName "Tara" ;
    foaf:age 35 ;
    :worksFor :nimbus ;
    foaf:knows :ivo .

:ivo a foaf:Person ;
    foaf:firstName "Ivo" ;
    foaf:age 28 ;
    :worksFor :nimbus .
"""

FACT_SHEET_VOCAB = """\
@prefix : <http://example.org/org#> .
@prefix foaf: <http://xmlns.com/foaf/0.1/> .
"""

# Node pairs for the connection-explanation task (undirected paths exist).
CONNECTION_CASES = [
    ("bob", "carlos"),
    ("dana", "anne"),
    ("erika", "sales"),
]

# --- SPARQL datasets ---------------------------------------------------

TRADE_PREFIX = "http://example.org/trade#"

TRADE_GRAPH_TURTLE = """\
@prefix : <http://example.org/trade#> .

:germany a :Country ;
    :name "Germany" ;
    :gdpBillion 4456 ;
    :exports :cars, :machines ;
    :partnerOf :france, :norway .
:france a :Country ;
    :name "France" ;
    :gdpBillion 3052 ;
    :exports :wine, :machines ;
    :partnerOf :germany .
:norway a :Country ;
    :name "Norway" ;
    :gdpBillion 485 ;
    :exports :fish, :oil ;
    :partnerOf :germany .
:chile a :Country ;
    :name "Chile" ;
    :gdpBillion 335 ;
    :exports :copper, :wine .

:cars a :Product ; :name "Cars" ; :category "manufactured" .
:machines a :Product ; :name "Machines" ; :category "manufactured" .
:wine a :Product ; :name "Wine" ; :category "agriculture" .
:fish a :Product ; :name "Fish" ; :category "agriculture" .
:oil a :Product ; :name "Crude oil" ; :category "resource" .
:copper a :Product ; :name "Copper" ; :category "resource" .
"""

BEASTS_PREFIX = "http://example.org/beasts#"

BEASTS_GRAPH_TURTLE = """\
@prefix : <http://example.org/beasts#> .

:dragon a :Creature ;
    :name "Dragon" ;
    :legs 4 ;
    :diet "carnivore" ;
    :livesIn :mountains .
:griffin a :Creature ;
    :name "Griffin" ;
    :legs 4 ;
    :diet "carnivore" ;
    :livesIn :mountains .
:unicorn a :Creature ;
    :name "Unicorn" ;
    :legs 4 ;
    :diet "herbivore" ;
    :livesIn :forest .
:spider a :Creature ;
    :name "Giant Spider" ;
    :legs 8 ;
    :diet "carnivore" ;
    :livesIn :forest .
:wyrm a :Creature ;
    :name "Wyrm" ;
    :legs 0 ;
    :diet "carnivore" ;
    :livesIn :swamp .
:treant a :Creature ;
    :name "Treant" ;
    :legs 2 ;
    :diet "herbivore" ;
    :livesIn :forest .

:mountains a :Habitat ; :name "Mountains" .
:forest a :Habitat ; :name "Forest" .
:swamp a :Habitat ; :name "Swamp" .
"""

# (question, gold query) pairs per dataset. Queries stay inside the
# supported SELECT subset on purpose.
ORG_QUERY_CASES = [
    (
        "Which persons are in the graph?",
        "PREFIX foaf: <http://xmlns.com/foaf/0.1/>\n"
        "SELECT ?p WHERE { ?p a foaf:Person }",
    ),
    (
        "List the first names of all persons, alphabetically.",
        "PREFIX foaf: <http://xmlns.com/foaf/0.1/>\n"
        "SELECT ?name WHERE { ?p foaf:firstName ?name } ORDER BY ?name",
    ),
    (
        "Which persons are older than 30? Give their first names.",
        "PREFIX foaf: <http://xmlns.com/foaf/0.1/>\n"
        "SELECT ?name WHERE { ?p foaf:firstName ?name . ?p foaf:age ?age . "
        "FILTER(?age > 30) }",
    ),
    (
        "Who works for the research department?",
        "PREFIX : <http://example.org/org#>\n"
        "SELECT ?p WHERE { ?p :worksFor :research }",
    ),
    (
        "Which person heads which department?",
        "PREFIX : <http://example.org/org#>\n"
        "SELECT ?p ?d WHERE { ?p :headOf ?d }",
    ),
    (
        "Which departments have at least one employee?",
        "PREFIX : <http://example.org/org#>\n"
        "SELECT DISTINCT ?d WHERE { ?p :worksFor ?d }",
    ),
    (
        "Whom does Anne know?",
        "PREFIX : <http://example.org/org#>\n"
        "PREFIX foaf: <http://xmlns.com/foaf/0.1/>\n"
        "SELECT ?x WHERE { :anne foaf:knows ?x }",
    ),
    (
        "What is the first name of the youngest person?",
        "PREFIX foaf: <http://xmlns.com/foaf/0.1/>\n"
        "SELECT ?name WHERE { ?p foaf:firstName ?name . ?p foaf:age ?age } "
        "ORDER BY ?age LIMIT 1",
    ),
    (
        "Who knows Anne?",
        "PREFIX : <http://example.org/org#>\n"
        "PREFIX foaf: <http://xmlns.com/foaf/0.1/>\n"
        "SELECT ?x WHERE { ?x foaf:knows :anne }",
    ),
    (
        "Give the first names and room numbers of everyone in sales.",
        "PREFIX : <http://example.org/org#>\n"
        "PREFIX foaf: <http://xmlns.com/foaf/0.1/>\n"
        "SELECT ?name ?room WHERE { ?p :worksFor :sales . "
        "?p foaf:firstName ?name . ?p :room ?room }",
    ),
]

TRADE_QUERY_CASES = [
    (
        "Which countries are in the graph?",
        "PREFIX : <http://example.org/trade#>\nSELECT ?c WHERE { ?c a :Country }",
    ),
    (
        "List all country names in alphabetical order.",
        "PREFIX : <http://example.org/trade#>\n"
        "SELECT ?name WHERE { ?c a :Country . ?c :name ?name } ORDER BY ?name",
    ),
    (
        "Which countries have a GDP above 1000 billion?",
        "PREFIX : <http://example.org/trade#>\n"
        "SELECT ?c WHERE { ?c :gdpBillion ?gdp . FILTER(?gdp > 1000) }",
    ),
    (
        "What does Norway export?",
        "PREFIX : <http://example.org/trade#>\nSELECT ?p WHERE { :norway :exports ?p }",
    ),
    (
        "Which products are agricultural?",
        "PREFIX : <http://example.org/trade#>\n"
        "SELECT ?p WHERE { ?p :category \"agriculture\" }",
    ),
    (
        "Which distinct products are exported by anyone?",
        "PREFIX : <http://example.org/trade#>\n"
        "SELECT DISTINCT ?p WHERE { ?c :exports ?p }",
    ),
    (
        "Which countries export wine?",
        "PREFIX : <http://example.org/trade#>\nSELECT ?c WHERE { ?c :exports :wine }",
    ),
    (
        "Name the two countries with the highest GDP, highest first.",
        "PREFIX : <http://example.org/trade#>\n"
        "SELECT ?name WHERE { ?c :gdpBillion ?gdp . ?c :name ?name } "
        "ORDER BY DESC(?gdp) LIMIT 2",
    ),
    (
        "Who are Germany's trade partners?",
        "PREFIX : <http://example.org/trade#>\nSELECT ?x WHERE { :germany :partnerOf ?x }",
    ),
    (
        "Which countries with a GDP under 500 billion export a resource product?",
        "PREFIX : <http://example.org/trade#>\n"
        "SELECT ?c WHERE { ?c :gdpBillion ?gdp . ?c :exports ?p . "
        "?p :category \"resource\" . FILTER(?gdp < 500) }",
    ),
]

BEASTS_QUERY_CASES = [
    (
        "Which creatures are in the bestiary?",
        "PREFIX : <http://example.org/beasts#>\nSELECT ?c WHERE { ?c a :Creature }",
    ),
    (
        "List all creature names alphabetically.",
        "PREFIX : <http://example.org/beasts#>\n"
        "SELECT ?name WHERE { ?c a :Creature . ?c :name ?name } ORDER BY ?name",
    ),
    (
        "Which creatures have more than four legs?",
        "PREFIX : <http://example.org/beasts#>\n"
        "SELECT ?c WHERE { ?c :legs ?n . FILTER(?n > 4) }",
    ),
    (
        "Which creatures live in the forest?",
        "PREFIX : <http://example.org/beasts#>\nSELECT ?c WHERE { ?c :livesIn :forest }",
    ),
    (
        "Which creatures are herbivores?",
        "PREFIX : <http://example.org/beasts#>\n"
        "SELECT ?c WHERE { ?c :diet \"herbivore\" }",
    ),
    (
        "In which distinct habitats do creatures live?",
        "PREFIX : <http://example.org/beasts#>\n"
        "SELECT DISTINCT ?h WHERE { ?c :livesIn ?h }",
    ),
    (
        "Which carnivores live in the mountains?",
        "PREFIX : <http://example.org/beasts#>\n"
        "SELECT ?c WHERE { ?c :diet \"carnivore\" . ?c :livesIn :mountains }",
    ),
    (
        "Name the creatures without legs.",
        "PREFIX : <http://example.org/beasts#>\n"
        "SELECT ?name WHERE { ?c :legs 0 . ?c :name ?name }",
    ),
    (
        "Which creatures have exactly four legs and eat meat?",
        "PREFIX : <http://example.org/beasts#>\n"
        "SELECT ?c WHERE { ?c :legs ?n . ?c :diet \"carnivore\" . FILTER(?n = 4) }",
    ),
    (
        "List the names of forest creatures, alphabetically.",
        "PREFIX : <http://example.org/beasts#>\n"
        "SELECT ?name WHERE { ?c :livesIn :forest . ?c :name ?name } ORDER BY ?name",
    ),
]

SPARQL_DATASETS = {
    "orga": (ORG_GRAPH_TURTLE, ORG_QUERY_CASES),
    "trade": (TRADE_GRAPH_TURTLE, TRADE_QUERY_CASES),
    "beasts": (BEASTS_GRAPH_TURTLE, BEASTS_QUERY_CASES),
}
