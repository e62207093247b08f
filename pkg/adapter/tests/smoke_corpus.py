"""50-sentence multilingual smoke corpus for the record contract test.

Mildly worded stand-ins are used where the register would otherwise be
abusive; the contract under test is structural (schema validity and
offset exactness), not classification quality.
"""

SMOKE_CORPUS: list[tuple[str, str]] = [
    ("en", "you are all terrible people"),
    ("en", "those idiots ruined everything again"),
    ("en", "I hope your day is wonderful"),
    ("en", "stop being such a clown about it"),
    ("en", "the committee approved the new budget"),
    ("en", "y'all keep spreading nonsense online"),
    ("en", "what a bunch of absolute losers"),
    ("en", "she wrote a brilliant essay yesterday"),
    ("en", "nobody cares about your dumb opinions"),
    ("en", "the weather in April was lovely"),
    ("de", "Politiker lügen notorisch und ständig"),
    ("de", "du bist ein schrecklicher Mensch"),
    ("de", "der Zug kommt pünktlich um acht"),
    ("de", "diese Trottel verstehen gar nichts"),
    ("de", "wir besuchen morgen das Museum"),
    ("de", "hör auf, solchen Unsinn zu erzählen"),
    ("de", "die Straßenbahn war heute überfüllt"),
    ("de", "ihr seid alle furchtbar gemein"),
    ("de", "das Mädchen liest gern Bücher"),
    ("de", "München ist im Sommer wunderschön"),
    ("es", "eres una persona horrible y cruel"),
    ("es", "los políticos mienten todo el tiempo"),
    ("es", "el café de la esquina es excelente"),
    ("es", "deja de decir tonterías por favor"),
    ("es", "mañana viajamos a la montaña"),
    ("es", "qué grupo de inútiles tan grande"),
    ("fr", "tu es vraiment une personne affreuse"),
    ("fr", "ces imbéciles ne comprennent rien"),
    ("fr", "le boulanger ouvre à sept heures"),
    ("fr", "arrête de raconter n'importe quoi"),
    ("fr", "nous aimons les soirées d'été"),
    ("fr", "quelle bande de bons à rien"),
    ("pt", "você é uma pessoa horrível mesmo"),
    ("pt", "esses tolos estragaram tudo de novo"),
    ("pt", "o jantar de ontem estava ótimo"),
    ("pt", "pare de espalhar bobagens na internet"),
    ("ja", "あなたはひどい人ですね"),
    ("ja", "今日はとても良い天気です"),
    ("ja", "その話は全部でたらめだ"),
    ("ja", "駅まで歩いて十分かかります"),
    ("en", "you 🤬💩 ruined the whole party"),
    ("en", "great job 🎉 everyone celebrated loudly"),
    ("en", "this is so 🔥 I cannot even"),
    ("de", "dieser 💩 Tag war einfach furchtbar"),
    ("en", "naïve façade café résumé coöperate"),
    ("en", "áccent cömbining màrks everywhere"),
    ("en", "MiXeD CaSe and   extra   spaces"),
    ("en", "punctuation!!! everywhere??? really..."),
    ("en", "one"),
    ("en", "tabs\tand multiple   separators here"),
]

assert len(SMOKE_CORPUS) == 50
